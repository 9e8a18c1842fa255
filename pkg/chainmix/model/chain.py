from __future__ import annotations

import math
from typing import Any, Sequence

import numpy as np

from chainmix.errors import DataValidationError
from chainmix.model.states import ALLOWED_EDGES, LABELS, N_STATES, State

ROW_SUM_TOLERANCE = 1e-9


class InvalidChainError(DataValidationError):
    pass


class MarkovChain:
    """
    Immutable 8×8 transition matrix over the model states, indexed [from][to].

    Every row except E sums to one, E has no outgoing edges, nothing enters S, and edges outside
    ALLOWED_EDGES are exactly zero.
    """

    __slots__ = ("_transitions",)
    _transitions: np.ndarray

    def __init__(self, transitions: Any) -> None:
        try:
            matrix = np.array(transitions, dtype=np.float64)
        except (TypeError, ValueError) as e:
            msg = f"Chain must be an {N_STATES}x{N_STATES} matrix of numbers: {e}"
            raise InvalidChainError(msg) from None
        matrix.setflags(write=False)
        object.__setattr__(self, "_transitions", matrix)
        self.validate()

    def __setattr__(self, key: str, value: Any) -> None:
        msg = "MarkovChain is immutable"
        raise AttributeError(msg)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MarkovChain):
            return NotImplemented
        return bool(np.array_equal(self._transitions, other._transitions))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"MarkovChain({self._transitions.tolist()!r})"

    @property
    def transitions(self) -> np.ndarray:
        return self._transitions

    def probability(self, source: State, target: State) -> float:
        return float(self._transitions[source, target])

    def validate(self) -> None:
        p = self._transitions
        if p.shape != (N_STATES, N_STATES):
            msg = f"Chain must be {N_STATES}x{N_STATES}, got {p.shape}"
            raise InvalidChainError(msg)
        if not np.all(np.isfinite(p)) or np.any(p < 0) or np.any(p > 1):
            msg = "Chain entries must be probabilities in [0, 1]"
            raise InvalidChainError(msg)
        if np.any(p[~ALLOWED_EDGES] != 0):
            rows, cols = np.nonzero(p * ~ALLOWED_EDGES)
            edges = ", ".join(f"{LABELS[r]}->{LABELS[c]}" for r, c in zip(rows, cols))
            msg = f"Chain has probability mass on edges outside the model: {edges}"
            raise InvalidChainError(msg)
        sums = p[: State.E].sum(axis=1)
        bad = np.nonzero(np.abs(sums - 1.0) > ROW_SUM_TOLERANCE)[0]
        if bad.size:
            msg = f"Rows {[LABELS[i] for i in bad]} don't sum to 1 (sums {sums[bad].tolist()})"
            raise InvalidChainError(msg)

    def to_rows(self) -> list[list[float]]:
        return self._transitions.tolist()  # type: ignore[no-any-return]

    @classmethod
    def uniform(cls) -> MarkovChain:
        return cls.from_counts(np.zeros((N_STATES, N_STATES)), smoothing=0.0)

    @classmethod
    def from_counts(cls, counts: np.ndarray, smoothing: float = 0.0) -> MarkovChain:
        """
        Maximum-likelihood chain from a transition count table. Counts on edges outside the model are
        ignored, `smoothing` is added to every allowed edge, and a row with no mass at all becomes
        uniform over its allowed edges.
        """
        table = np.where(ALLOWED_EDGES, np.asarray(counts, dtype=np.float64).reshape(N_STATES, N_STATES), 0.0)
        table = table + smoothing * ALLOWED_EDGES
        totals = table.sum(axis=1, keepdims=True)
        empty = (totals[:, 0] == 0) & ALLOWED_EDGES.any(axis=1)
        table[empty] = ALLOWED_EDGES[empty]
        totals[empty] = ALLOWED_EDGES[empty].sum(axis=1, keepdims=True)
        with np.errstate(invalid="ignore", divide="ignore"):
            matrix = np.where(totals > 0, table / totals, 0.0)
        return cls(matrix)


def log_likelihood(seq: Any, chain: MarkovChain) -> float:
    """
    Log probability that `chain` generates the path of `seq`, summed in log space.
    Returns -inf when any traversed edge has probability 0.
    """
    path = np.fromiter(seq.states, dtype=np.intp, count=len(seq.states))
    probs = chain.transitions[path[:-1], path[1:]]
    if np.any(probs == 0):
        return -math.inf
    return float(np.log(probs).sum())


def score_chains(seq: Any, chains: Sequence[MarkovChain]) -> tuple[int, float]:
    """Index of the most likely chain (smallest index on ties) and its log likelihood"""
    if not chains:
        msg = "At least one chain is required"
        raise ValueError(msg)
    scores = [log_likelihood(seq, chain) for chain in chains]
    best = int(np.argmax(scores))
    return best, scores[best]


def most_likely_chain(seq: Any, chains: Sequence[MarkovChain]) -> int:
    """
    Argmax over chains of the sequence likelihood, ties going to the smallest index.
    When the sequence is impossible under every chain it is unsupported, and 0 is returned.
    """
    return score_chains(seq, chains)[0]


def transition_table(seqs: Sequence[Any]) -> np.ndarray:
    """
    Transition counts per sequence as an (n, 64) float matrix; column from*8+to.
    Built in one pass over the concatenated paths.
    """
    n = len(seqs)
    if n == 0:
        return np.zeros((0, N_STATES * N_STATES))
    lengths = np.fromiter((len(s.states) for s in seqs), dtype=np.intp, count=n)
    flat = np.fromiter((state for s in seqs for state in s.states), dtype=np.intp, count=int(lengths.sum()))
    codes = flat[:-1] * N_STATES + flat[1:]
    owners = np.repeat(np.arange(n), lengths)[:-1]
    # drop the pairs that straddle two sequences (last state of one, first state of the next)
    keep = np.ones(codes.shape[0], dtype=bool)
    keep[np.cumsum(lengths)[:-1] - 1] = False
    flat_index = owners[keep] * (N_STATES * N_STATES) + codes[keep]
    counts = np.bincount(flat_index, minlength=n * N_STATES * N_STATES)
    return counts.reshape(n, N_STATES * N_STATES).astype(np.float64)


def log_likelihood_matrix(table: np.ndarray, chains: Sequence[MarkovChain]) -> np.ndarray:
    """(n, k) log likelihoods of every sequence under every chain, -inf where a used edge has probability 0"""
    if not chains:
        msg = "At least one chain is required"
        raise ValueError(msg)
    probs = np.stack([chain.transitions.reshape(-1) for chain in chains])
    impossible = probs == 0
    with np.errstate(divide="ignore"):
        logs = np.where(impossible, 0.0, np.log(np.where(impossible, 1.0, probs)))
    scores = table @ logs.T
    scores[(table @ impossible.T.astype(np.float64)) > 0] = -np.inf
    return scores  # type: ignore[no-any-return]
