from __future__ import annotations

from typing import Any

from chainmix import paths
from chainmix.utils.json_conf import JsonConf

DEFAULT_SEED = 2016


class Settings(JsonConf):
    """User defaults for command-line flags. Flags given on the command line always win."""

    gap_minutes = 15.0
    restarts = 5
    convergence_fraction = 0.05
    max_iterations = 100
    smoothing = 1e-6
    seed = DEFAULT_SEED
    coverage = 0.7
    end_probability = 0.05
    k_true = 6
    n_sequences = 50000
    repetitions = 10
    workers = 1

    # Convert dash to underscore, so keys can be written the same way as the flags
    def __setitem__(self, key: str, value: Any, validate_type: bool = True) -> None:  # type: ignore[override]
        super().__setitem__(key.replace("-", "_"), value, validate_type)

    @classmethod
    def load(cls) -> Settings:  # type: ignore[override]
        return super().load(paths.SETTINGS_FILE)
