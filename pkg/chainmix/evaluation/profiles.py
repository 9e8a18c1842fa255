from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import numpy as np

from chainmix.evaluation.metrics import check_assignments
from chainmix.model.sequence import EncodedSequence


@dataclass(frozen=True)
class ChainStats:
    index: int
    n_sequences: int
    # mean number of actions (states between S and E), 0.0 for a chain without sequences
    mean_length: float

    def to_json(self) -> dict[str, Any]:
        return {"chain_index": self.index, "n_sequences": self.n_sequences, "mean_length": self.mean_length}


@dataclass(frozen=True)
class StudentProfile:
    student_id: str
    counts: tuple[int, ...]
    distribution: tuple[float, ...]
    support_size: int

    def to_json(self) -> dict[str, Any]:
        return {
            "student_id": self.student_id,
            "counts": list(self.counts),
            "distribution": list(self.distribution),
            "support_size": self.support_size,
        }


@dataclass(frozen=True)
class ProfileSummary:
    profiles: list[StudentProfile]
    mean_support_size: float
    std_support_size: float

    def to_json(self) -> dict[str, Any]:
        return {
            "n_students": len(self.profiles),
            "mean_support_size": self.mean_support_size,
            "std_support_size": self.std_support_size,
        }


def chain_stats(
    seqs: Sequence[EncodedSequence], assignments: Sequence[int] | np.ndarray, k: int
) -> list[ChainStats]:
    labels = check_assignments(assignments, len(seqs), k)
    lengths = np.fromiter((seq.n_actions for seq in seqs), dtype=np.float64, count=len(seqs))
    counts = np.bincount(labels, minlength=k)
    totals = np.bincount(labels, weights=lengths, minlength=k)
    return [
        ChainStats(j, int(counts[j]), float(totals[j] / counts[j]) if counts[j] else 0.0) for j in range(k)
    ]


def student_profiles(assigned: Iterable[tuple[str, int]], k: int) -> ProfileSummary:
    """
    Per-student distribution of sessions over the k chains, from (student_id, chain index) pairs.
    Profiles are sorted by student id; the summary carries the mean and (population) standard deviation
    of the number of distinct chains per student.
    """
    if k < 1:
        msg = f"k must be >= 1 (got {k})"
        raise ValueError(msg)
    counts: defaultdict[str, np.ndarray] = defaultdict(lambda: np.zeros(k, dtype=np.int64))
    for student_id, index in assigned:
        if not 0 <= index < k:
            msg = f"Chain index {index} of student {student_id!r} is outside [0, {k})"
            raise ValueError(msg)
        counts[student_id][index] += 1

    profiles = []
    for student_id in sorted(counts):
        row = counts[student_id]
        profiles.append(
            StudentProfile(
                student_id=student_id,
                counts=tuple(int(c) for c in row),
                distribution=tuple(float(f) for f in row / row.sum()),
                support_size=int(np.count_nonzero(row)),
            )
        )
    if not profiles:
        return ProfileSummary([], 0.0, 0.0)
    supports = np.array([p.support_size for p in profiles], dtype=np.float64)
    return ProfileSummary(profiles, float(supports.mean()), float(supports.std()))
