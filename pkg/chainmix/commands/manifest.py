from __future__ import annotations

import logging
from argparse import Namespace
from pathlib import Path
from typing import Callable, Sequence

import chainmix
from chainmix.config import flags_of
from chainmix.errors import UsageError
from chainmix.utils.basedataclass import BaseDataClass
from chainmix.utils.json_utils import json_load, json_save
from chainmix.utils.settings import DEFAULT_SEED
from chainmix.utils.timer import Stopwatch

logger = logging.getLogger()

MANIFEST_FILE = "manifest.json"

# file name -> function writing that file
Outputs = dict[str, Callable[[Path], object]]


class RunManifest(BaseDataClass):
    command = ""
    flags: dict = {}  # type: ignore[type-arg]
    rng_seed = DEFAULT_SEED
    inputs: list = []  # type: ignore[type-arg]
    outputs: list = []  # type: ignore[type-arg]
    version = chainmix.version
    duration_seconds = 0.0


def run_command(
    command: str, options: Namespace, inputs: Sequence[str], compute: Callable[[], Outputs]
) -> RunManifest:
    """
    Compute every output of a command, then write them all plus the manifest to the output directory.
    Nothing is written (and the directory isn't created) when computing fails.
    A directory holding the manifest of a different command is refused with UsageError.
    """
    directory = Path(options.output_dir)
    existing = json_load(directory / MANIFEST_FILE)
    previous = existing.get("command", command) if isinstance(existing, dict) else command
    if previous != command:
        msg = f'"{directory}" holds the outputs of "{previous}". Use another output directory for "{command}"'
        raise UsageError(msg)

    logger.info("Running %s", command)
    with Stopwatch() as watch:
        outputs = compute()

    manifest = RunManifest(
        command=command,
        flags=flags_of(options),
        inputs=[str(path) for path in inputs],
        outputs=sorted(outputs),
        duration_seconds=watch.elapsed,
    )
    if "seed" in manifest.flags:
        manifest.rng_seed = manifest.flags["seed"]

    directory.mkdir(parents=True, exist_ok=True)
    for name, write in outputs.items():
        write(directory / name)
    json_save(manifest, directory / MANIFEST_FILE)
    logger.info("%s finished in %.2fs, wrote %s file(s) to %s", command, watch.elapsed, len(outputs), directory)
    return manifest
