from __future__ import annotations

from argparse import Namespace
from typing import Callable

from chainmix.commands import cluster_cmd, eval_cmd, export_dot_cmd, sessionize_cmd, synth_cmd
from chainmix.commands.manifest import MANIFEST_FILE, RunManifest

COMMANDS: dict[str, Callable[[Namespace], RunManifest]] = {
    "sessionize": sessionize_cmd.run,
    "cluster": cluster_cmd.run,
    "synth": synth_cmd.run,
    "eval": eval_cmd.run,
    "export-dot": export_dot_cmd.run,
}

__all__ = ["COMMANDS", "MANIFEST_FILE", "RunManifest"]
