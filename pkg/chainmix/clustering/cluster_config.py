from __future__ import annotations

from chainmix.errors import UsageError
from chainmix.utils.basedataclass import BaseDataClass
from chainmix.utils.settings import DEFAULT_SEED


class ConfigError(UsageError):
    pass


class ClusterConfig(BaseDataClass):
    k = 2
    restarts = 5
    convergence_fraction = 0.05
    max_iterations = 100
    smoothing = 1e-6
    rng_seed = DEFAULT_SEED

    def validate(self) -> None:
        """
        Ensure every bound holds (or raise ConfigError listing all violations)
        """
        problems = []
        if self.k < 1:
            problems.append(f"k must be >= 1 (got {self.k})")
        if self.restarts < 1:
            problems.append(f"restarts must be >= 1 (got {self.restarts})")
        if not 0 < self.convergence_fraction <= 1:
            problems.append(f"convergence_fraction must be in (0, 1] (got {self.convergence_fraction})")
        if self.max_iterations < 1:
            problems.append(f"max_iterations must be >= 1 (got {self.max_iterations})")
        if self.smoothing < 0:
            problems.append(f"smoothing must be >= 0 (got {self.smoothing})")
        if problems:
            msg = f"Invalid clustering configuration: {'; '.join(problems)}"
            raise ConfigError(msg)
