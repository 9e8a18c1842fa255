from __future__ import annotations

import logging
from typing import NamedTuple, Sequence

import numpy as np

from chainmix.clustering.cluster_config import ClusterConfig
from chainmix.clustering.kmeans import fit_table
from chainmix.model.chain import transition_table
from chainmix.model.sequence import EncodedSequence
from chainmix.utils.rng import derive_rng

logger = logging.getLogger()
PERMUTED_STREAM = 1


class PermutationRow(NamedTuple):
    k: int
    sum_log_likelihood_real: float
    sum_log_likelihood_permuted: float
    permuted_unsupported: int


def permute_interior(seq: EncodedSequence, rng: np.random.Generator) -> EncodedSequence:
    """
    Shuffle the states between S and E. The draw is uniform over the orderings that are still paths
    of the model, i.e. that don't open with a topic change.
    """
    interior = list(seq.interior)
    if len(interior) < 2:  # noqa: PLR2004
        return seq
    openers = [i for i, state in enumerate(interior) if not state.is_topic_change]
    first = interior.pop(openers[int(rng.integers(len(openers)))])
    rest = [interior[i] for i in rng.permutation(len(interior))]
    return EncodedSequence.from_interior([first, *rest], seq.source_session_id)


def permutation_baseline(
    seqs: Sequence[EncodedSequence], k_values: Sequence[int], config: ClusterConfig
) -> list[PermutationRow]:
    """
    Best sum of log likelihoods per k on the sequences and on copies with shuffled interiors.
    Every restart of the permuted side clusters its own shuffled copy from its own priors.
    """
    if not k_values:
        msg = "k_values must not be empty"
        raise ValueError(msg)
    table = transition_table(seqs)
    rows = []
    for k in sorted(k_values):
        real = fit_table(table, ClusterConfig(config, k=k))
        permuted = []
        for restart in range(config.restarts):
            rng = derive_rng(config.rng_seed, k, PERMUTED_STREAM, restart)
            shuffled = transition_table([permute_interior(seq, rng) for seq in seqs])
            seed = int(rng.integers(2**32))
            permuted.append(fit_table(shuffled, ClusterConfig(config, k=k, restarts=1, rng_seed=seed)))
        best = max(permuted, key=lambda model: model.sum_log_likelihood)
        logger.info(
            "k=%s: sum log likelihood %.6f real, %.6f permuted",
            k,
            real.sum_log_likelihood,
            best.sum_log_likelihood,
        )
        rows.append(PermutationRow(k, real.sum_log_likelihood, best.sum_log_likelihood, best.unsupported_count))
    return rows
