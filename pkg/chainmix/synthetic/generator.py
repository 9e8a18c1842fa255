from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np

from chainmix.clustering.cluster_config import ConfigError
from chainmix.clustering.kmeans import random_prior
from chainmix.errors import DataValidationError
from chainmix.model.chain import MarkovChain, log_likelihood_matrix, transition_table
from chainmix.model.sequence import EncodedSequence
from chainmix.model.states import ACTION_STATES, N_STATES, SAME_TOPIC_STATES, STATES_BY_INDEX, State

MAX_WALK_STEPS = 100_000
_ACTIONS = list(ACTION_STATES)
_FIRST_ACTIONS = list(SAME_TOPIC_STATES)


class SamplingError(DataValidationError):
    pass


class LabelledSequence(NamedTuple):
    seq: EncodedSequence
    generator_index: int
    # most likely true chain, which can differ from the generator
    label: int


def random_generator_chain(rng: np.random.Generator, end_probability: float = 0.05) -> MarkovChain:
    """
    Random chain whose action states all end with exactly `end_probability`, so interior lengths are
    geometric with mean 1 / end_probability. S can't end, its row only covers the same-topic states.
    """
    if not 0 < end_probability < 1:
        msg = f"end_probability must be in (0, 1) (got {end_probability})"
        raise ConfigError(msg)
    draws = rng.random((N_STATES, N_STATES))
    matrix = np.zeros((N_STATES, N_STATES))
    first = draws[State.S, _FIRST_ACTIONS]
    matrix[State.S, _FIRST_ACTIONS] = first / first.sum()
    for source in ACTION_STATES:
        weights = draws[source, _ACTIONS]
        matrix[source, _ACTIONS] = (1 - end_probability) * weights / weights.sum()
        matrix[source, State.E] = end_probability
    return MarkovChain(matrix)


def _cumulative(chains: Sequence[MarkovChain]) -> np.ndarray:
    return np.cumsum(np.stack([chain.transitions for chain in chains]), axis=2)


def sample_sequence(chain: MarkovChain, rng: np.random.Generator, source_session_id: str = "") -> EncodedSequence:
    """Random walk from S until E"""
    cumulative = _cumulative([chain])[0]
    path = [State.S]
    state = int(State.S)
    while state != State.E:
        if len(path) > MAX_WALK_STEPS:
            msg = f"Random walk did not reach E within {MAX_WALK_STEPS} steps; the chain is pathological"
            raise SamplingError(msg)
        row = cumulative[state]
        state = int(np.searchsorted(row, rng.random() * row[-1], side="right"))
        path.append(STATES_BY_INDEX[state])
    return EncodedSequence(tuple(path), source_session_id)


def sample_corpus(
    chains: Sequence[MarkovChain], n: int, rng: np.random.Generator, id_prefix: str = "synthetic"
) -> tuple[list[EncodedSequence], np.ndarray]:
    """
    n sequences, each from a generator chosen uniformly among `chains`. All walks advance in lockstep,
    so the cost is one vectorised draw per step instead of one per state.
    Returns the sequences and the generator index of each.
    """
    generators = rng.integers(0, len(chains), size=n)
    cumulative = _cumulative(chains)
    current = np.full(n, int(State.S), dtype=np.intp)
    active = np.arange(n)
    steps: list[tuple[np.ndarray, np.ndarray]] = []
    while active.size:
        if len(steps) > MAX_WALK_STEPS:
            msg = f"Random walk did not reach E within {MAX_WALK_STEPS} steps; a chain is pathological"
            raise SamplingError(msg)
        rows = cumulative[generators[active], current[active]]
        targets = rng.random(active.size) * rows[:, -1]
        nxt = (rows <= targets[:, None]).sum(axis=1)
        current[active] = nxt
        steps.append((active, nxt))
        active = active[nxt != State.E]

    paths: list[list[State]] = [[State.S] for _ in range(n)]
    for indexes, states in steps:
        for i, s in zip(indexes.tolist(), states.tolist()):
            paths[i].append(STATES_BY_INDEX[s])
    sequences = [EncodedSequence(tuple(path), f"{id_prefix}:{i}") for i, path in enumerate(paths)]
    return sequences, generators


def label_corpus(
    seqs: Sequence[EncodedSequence], true_chains: Sequence[MarkovChain], generators: Sequence[int] | np.ndarray
) -> list[LabelledSequence]:
    """Label every sequence with its most likely true chain, keeping the generator index alongside"""
    if not true_chains:
        msg = "At least one true chain is required"
        raise ValueError(msg)
    labels = np.argmax(log_likelihood_matrix(transition_table(seqs), true_chains), axis=1)
    return [
        LabelledSequence(seq, int(generator), int(label)) for seq, generator, label in zip(seqs, generators, labels)
    ]


def noisy_prior(true_chain: MarkovChain, rng: np.random.Generator, alpha: float) -> MarkovChain:
    """(1 - alpha) * true_chain + alpha * a fresh random prior"""
    if not 0 <= alpha <= 1:
        msg = f"alpha must be in [0, 1] (got {alpha})"
        raise ConfigError(msg)
    noise = random_prior(rng)
    return MarkovChain((1 - alpha) * true_chain.transitions + alpha * noise.transitions)
