from __future__ import annotations

from argparse import Namespace
from pathlib import Path
from typing import Callable

from chainmix.clustering.model_io import load_model
from chainmix.commands.manifest import Outputs, RunManifest, run_command
from chainmix.export.dot import render_dot


def _text_writer(text: str) -> Callable[[Path], object]:
    return lambda path: path.write_text(text, encoding="utf-8")


def run(options: Namespace) -> RunManifest:
    def compute() -> Outputs:
        saved = load_model(options.model)
        texts = [render_dot(chain, index, options.coverage) for index, chain in enumerate(saved.chains)]
        return {f"chain_{index}.dot": _text_writer(text) for index, text in enumerate(texts)}

    return run_command("export-dot", options, [options.model], compute)
