from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence, TypeVar

import numpy as np

from chainmix.clustering.cluster_config import ClusterConfig, ConfigError
from chainmix.clustering.kmeans import fit_table
from chainmix.evaluation.purity import average_purity
from chainmix.model.chain import MarkovChain, transition_table
from chainmix.model.sequence import EncodedSequence
from chainmix.synthetic.generator import label_corpus, noisy_prior, random_generator_chain, sample_corpus
from chainmix.utils.basedataclass import BaseDataClass
from chainmix.utils.rng import derive_rng
from chainmix.utils.settings import DEFAULT_SEED

logger = logging.getLogger()
T = TypeVar("T")
R = TypeVar("R")


class SyntheticConfig(BaseDataClass):
    k_true = 6
    n_sequences = 50000
    end_probability = 0.05
    alpha = 0.0
    repetitions = 10
    rng_seed = DEFAULT_SEED
    workers = 1

    def validate(self) -> None:
        problems = []
        if self.k_true < 1:
            problems.append(f"k_true must be >= 1 (got {self.k_true})")
        if self.n_sequences < 1:
            problems.append(f"n_sequences must be >= 1 (got {self.n_sequences})")
        if not 0 < self.end_probability < 1:
            problems.append(f"end_probability must be in (0, 1) (got {self.end_probability})")
        if not 0 <= self.alpha <= 1:
            problems.append(f"alpha must be in [0, 1] (got {self.alpha})")
        if self.repetitions < 1:
            problems.append(f"repetitions must be >= 1 (got {self.repetitions})")
        if self.workers < 1:
            problems.append(f"workers must be >= 1 (got {self.workers})")
        if problems:
            msg = f"Invalid synthetic configuration: {'; '.join(problems)}"
            raise ConfigError(msg)


@dataclass(frozen=True)
class SyntheticCorpus:
    chains: list[MarkovChain]
    sequences: list[EncodedSequence]
    generators: np.ndarray
    labels: np.ndarray
    table: np.ndarray


class NoiseCell(NamedTuple):
    alpha: float
    repetition: int
    purity: float
    generator_purity: float
    sum_log_likelihood: float


class NoiseSummary(NamedTuple):
    alpha: float
    mean_purity: float
    mean_generator_purity: float
    mean_sum_log_likelihood: float


class NoiseSweepResult(NamedTuple):
    cells: list[NoiseCell]
    summary: list[NoiseSummary]


def draw_corpus(config: SyntheticConfig, rng: np.random.Generator) -> SyntheticCorpus:
    """k_true random generator chains and n_sequences sampled uniformly over them, labelled"""
    chains = [random_generator_chain(rng, config.end_probability) for _ in range(config.k_true)]
    sequences, generators = sample_corpus(chains, config.n_sequences, rng)
    labelled = label_corpus(sequences, chains, generators)
    labels = np.fromiter((item.label for item in labelled), dtype=np.intp, count=len(labelled))
    return SyntheticCorpus(chains, sequences, generators, labels, transition_table(sequences))


def run_noise_cell(
    corpus: SyntheticCorpus, alpha: float, cluster_config: ClusterConfig, rng: np.random.Generator
) -> tuple[float, float, float]:
    """
    Cluster the corpus from noisy versions of its true chains.
    Returns purity against the likelihood labels, purity against the generators and the sum of log likelihoods.
    """
    priors = [noisy_prior(chain, rng, alpha) for chain in corpus.chains]
    model = fit_table(corpus.table, ClusterConfig(cluster_config, k=len(priors), restarts=1), priors)
    purity = average_purity(model.assignments, corpus.labels).average_purity
    generator_purity = average_purity(model.assignments, corpus.generators).average_purity
    return purity, generator_purity, model.sum_log_likelihood


def _map(func: Callable[[T], R], items: Iterable[T], workers: int) -> list[R]:
    if workers <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def noise_sweep_experiment(
    config: SyntheticConfig, alphas: Sequence[float], cluster_config: ClusterConfig | None = None
) -> NoiseSweepResult:
    """
    Average purity as priors move from the true chains (alpha 0) to random chains (alpha 1).
    Every repetition draws one corpus shared by all alphas; each (repetition, alpha) cell has its own
    random stream, so the table doesn't depend on the number of workers.
    """
    config.validate()
    for alpha in alphas:
        if not 0 <= alpha <= 1:
            msg = f"alpha must be in [0, 1] (got {alpha})"
            raise ConfigError(msg)
    base = ClusterConfig(cluster_config or {}, k=config.k_true, restarts=1, rng_seed=config.rng_seed)

    cells: list[NoiseCell] = []
    for repetition in range(config.repetitions):
        corpus = draw_corpus(config, derive_rng(config.rng_seed, repetition))

        def cell(indexed_alpha: tuple[int, float], corpus: SyntheticCorpus = corpus, rep: int = repetition) -> NoiseCell:
            index, alpha = indexed_alpha
            purity, generator_purity, total = run_noise_cell(
                corpus, alpha, base, derive_rng(config.rng_seed, rep, index)
            )
            return NoiseCell(alpha, rep, purity, generator_purity, total)

        cells.extend(_map(cell, list(enumerate(alphas)), config.workers))
        logger.info("Noise sweep repetition %s/%s done", repetition + 1, config.repetitions)

    summary = []
    for alpha in alphas:
        rows = [c for c in cells if c.alpha == alpha]
        summary.append(
            NoiseSummary(
                alpha,
                float(np.mean([c.purity for c in rows])),
                float(np.mean([c.generator_purity for c in rows])),
                float(np.mean([c.sum_log_likelihood for c in rows])),
            )
        )
    return NoiseSweepResult(cells, summary)
