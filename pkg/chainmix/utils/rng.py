from __future__ import annotations

import numpy as np


def derive_rng(seed: int, *key: int) -> np.random.Generator:
    """
    Independent random stream for one unit of work, e.g. derive_rng(seed, repetition, alpha_index).
    The same (seed, key) always gives the same stream, whatever order the units are evaluated in,
    so parallel and serial runs agree.
    """
    sequence = np.random.SeedSequence(entropy=seed & 0xFFFFFFFFFFFFFFFF, spawn_key=tuple(key))
    return np.random.default_rng(sequence)
