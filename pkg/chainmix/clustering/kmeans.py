from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from chainmix.clustering.cluster_config import ClusterConfig
from chainmix.errors import DataValidationError
from chainmix.model.chain import MarkovChain, log_likelihood_matrix, transition_table
from chainmix.model.sequence import EncodedSequence
from chainmix.model.states import ALLOWED_EDGES
from chainmix.utils.rng import derive_rng

logger = logging.getLogger()


class ClusteringError(DataValidationError):
    pass


class Reestimation(NamedTuple):
    chains: list[MarkovChain]
    reseeded: list[int]


@dataclass
class ClusterModel:
    chains: list[MarkovChain]
    assignments: np.ndarray
    sum_log_likelihood: float
    iterations_run: int
    reassignment_history: list[float]
    unsupported_count: int
    # log likelihood of each sequence under its assigned chain (-inf when unsupported)
    sequence_log_likelihoods: np.ndarray
    log_likelihood_history: list[float] = field(default_factory=list)
    reseed_count: int = 0
    restart_log_likelihoods: list[float] = field(default_factory=list)
    chosen_restart: int = 0

    @property
    def k(self) -> int:
        return len(self.chains)

    def cluster_sizes(self) -> list[int]:
        return np.bincount(self.assignments, minlength=self.k).tolist()  # type: ignore[no-any-return]


class SweepRow(NamedTuple):
    k: int
    sum_log_likelihood: float
    gain: float | None


def random_prior(rng: np.random.Generator) -> MarkovChain:
    """Uniform(0, 1) weight on every allowed edge, rows normalized"""
    weights = np.where(ALLOWED_EDGES, rng.random(ALLOWED_EDGES.shape), 0.0)
    return MarkovChain.from_counts(weights)


def _assign(table: np.ndarray, chains: Sequence[MarkovChain]) -> tuple[np.ndarray, np.ndarray]:
    scores = log_likelihood_matrix(table, chains)
    assignments = np.argmax(scores, axis=1)
    return assignments, scores[np.arange(scores.shape[0]), assignments]


def assign_step(seqs: Sequence[EncodedSequence], chains: Sequence[MarkovChain]) -> np.ndarray:
    """Index of the most likely chain for every sequence (smallest index on ties)"""
    return _assign(transition_table(seqs), chains)[0]


def _reestimate(
    table: np.ndarray,
    assignments: np.ndarray,
    k: int,
    smoothing: float,
    rng: np.random.Generator,
    fallback: Sequence[MarkovChain] | None = None,
) -> Reestimation:
    chains = []
    reseeded = []
    for j in range(k):
        members = assignments == j
        if not members.any():
            reseeded.append(j)
            # with supplied priors an empty cluster keeps its prior, so no randomness enters the run
            chains.append(fallback[j] if fallback is not None else random_prior(rng))
            continue
        chains.append(MarkovChain.from_counts(table[members].sum(axis=0), smoothing))
    if reseeded:
        logger.warning("Cluster(s) %s got no sequences and were %s", reseeded, "kept" if fallback is not None else "reseeded")
    return Reestimation(chains, reseeded)


def reestimate_step(
    seqs: Sequence[EncodedSequence],
    assignments: Sequence[int] | np.ndarray,
    k: int,
    smoothing: float,
    rng: np.random.Generator,
) -> Reestimation:
    """
    Rebuild every cluster's chain from the transition counts of its sequences plus `smoothing` per
    allowed edge. Clusters without sequences get a fresh random prior and are listed in `reseeded`.
    """
    labels = np.asarray(assignments, dtype=np.intp)
    if labels.shape[0] != len(seqs) or (labels.size and (labels.min() < 0 or labels.max() >= k)):
        msg = f"Assignments must be one index in [0, {k}) per sequence"
        raise ValueError(msg)
    return _reestimate(transition_table(seqs), labels, k, smoothing, rng)


def _run(
    table: np.ndarray,
    chains: list[MarkovChain],
    config: ClusterConfig,
    rng: np.random.Generator,
    keep_empty: bool = False,
) -> ClusterModel:
    previous: np.ndarray | None = None
    fractions: list[float] = []
    totals: list[float] = []
    reseeds = 0
    while True:
        assignments, best = _assign(table, chains)
        supported = np.isfinite(best)
        totals.append(float(best[supported].sum()))
        fractions.append(1.0 if previous is None else float(np.mean(assignments != previous)))
        logger.debug(
            "Iteration %s: %.4f of sequences reassigned, sum log likelihood %.6f",
            len(fractions),
            fractions[-1],
            totals[-1],
        )
        if fractions[-1] < config.convergence_fraction or len(fractions) >= config.max_iterations:
            break
        reestimation = _reestimate(
            table, assignments, config.k, config.smoothing, rng, chains if keep_empty else None
        )
        chains = reestimation.chains
        reseeds += len(reestimation.reseeded)
        previous = assignments

    unsupported = int((~supported).sum())
    if unsupported:
        logger.warning("%s sequence(s) are impossible under every chain and were left out of the sum", unsupported)
    return ClusterModel(
        chains=chains,
        assignments=assignments,
        sum_log_likelihood=totals[-1] if supported.any() else -math.inf,
        iterations_run=len(fractions),
        reassignment_history=fractions,
        unsupported_count=unsupported,
        sequence_log_likelihoods=best,
        log_likelihood_history=totals,
        reseed_count=reseeds,
    )


def fit_table(table: np.ndarray, config: ClusterConfig, priors: Sequence[MarkovChain] | None = None) -> ClusterModel:
    """fit() on a precomputed transition table, so sweeps only count transitions once"""
    config.validate()
    if table.shape[0] == 0:
        msg = "Nothing to cluster: no sequences"
        raise ClusteringError(msg)

    runs = []
    if priors is not None:
        if len(priors) != config.k:
            msg = f"Expected {config.k} priors, got {len(priors)}"
            raise ClusteringError(msg)
        runs.append(_run(table, list(priors), config, derive_rng(config.rng_seed, config.k, 0), keep_empty=True))
    else:
        for restart in range(config.restarts):
            rng = derive_rng(config.rng_seed, config.k, restart)
            initial = [random_prior(rng) for _ in range(config.k)]
            runs.append(_run(table, initial, config, rng))
            logger.info(
                "k=%s restart %s: sum log likelihood %.6f after %s iteration(s)",
                config.k,
                restart,
                runs[-1].sum_log_likelihood,
                runs[-1].iterations_run,
            )

    scores = [run.sum_log_likelihood for run in runs]
    if all(math.isinf(score) for score in scores):
        msg = "Every sequence is impossible under every chain in every restart. Try a smoothing above 0"
        raise ClusteringError(msg)
    chosen = int(np.argmax(scores))
    best = runs[chosen]
    best.restart_log_likelihoods = scores
    best.chosen_restart = chosen
    return best


def fit(
    seqs: Sequence[EncodedSequence], config: ClusterConfig, priors: Sequence[MarkovChain] | None = None
) -> ClusterModel:
    """
    Modified k-means over Markov chains. Each restart starts from random priors (or from `priors`, in
    which case a single run is made) and alternates assignment and re-estimation until fewer than
    `convergence_fraction` of the sequences change chain, or `max_iterations` is hit. The restart with
    the largest sum of log likelihoods is returned.
    """
    return fit_table(transition_table(seqs), config, priors)


def k_sweep(seqs: Sequence[EncodedSequence], k_values: Sequence[int], config: ClusterConfig) -> list[SweepRow]:
    """Best sum of log likelihoods per k, ordered by k, for picking k at the elbow"""
    if not k_values:
        msg = "k_values must not be empty"
        raise ValueError(msg)
    table = transition_table(seqs)
    rows: list[SweepRow] = []
    for k in sorted(k_values):
        model = fit_table(table, ClusterConfig(config, k=k))
        gain = model.sum_log_likelihood - rows[-1].sum_log_likelihood if rows else None
        rows.append(SweepRow(k, model.sum_log_likelihood, gain))
    return rows
