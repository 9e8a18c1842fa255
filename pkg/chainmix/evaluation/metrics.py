from __future__ import annotations

from typing import Sequence

import numpy as np

from chainmix.model.chain import MarkovChain, log_likelihood_matrix, transition_table
from chainmix.model.sequence import EncodedSequence


def check_assignments(assignments: Sequence[int] | np.ndarray, n: int, k: int) -> np.ndarray:
    labels = np.asarray(assignments, dtype=np.intp)
    if labels.shape != (n,) or (labels.size and (labels.min() < 0 or labels.max() >= k)):
        msg = f"Assignments must be one index in [0, {k}) per sequence"
        raise ValueError(msg)
    return labels


def assigned_log_likelihoods(
    seqs: Sequence[EncodedSequence], chains: Sequence[MarkovChain], assignments: Sequence[int] | np.ndarray
) -> np.ndarray:
    """Log likelihood of every sequence under its assigned chain (-inf when impossible)"""
    labels = check_assignments(assignments, len(seqs), len(chains))
    if not seqs:
        return np.zeros(0)
    scores = log_likelihood_matrix(transition_table(seqs), chains)
    return scores[np.arange(len(seqs)), labels]


def corpus_log_likelihood(
    seqs: Sequence[EncodedSequence], chains: Sequence[MarkovChain], assignments: Sequence[int] | np.ndarray
) -> float:
    values = assigned_log_likelihoods(seqs, chains, assignments)
    return float(values[np.isfinite(values)].sum())
