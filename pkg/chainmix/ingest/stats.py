from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from chainmix.ingest.sessions import Session
from chainmix.model.sequence import ActionKind


@dataclass(frozen=True)
class CorpusStats:
    n_sequences: int = 0
    n_actions: int = 0
    n_lessons: int = 0
    n_correct: int = 0
    n_wrong: int = 0
    length_histogram: Counter[int] = field(default_factory=Counter)
    sessions_per_student: Counter[str] = field(default_factory=Counter)

    @property
    def n_students(self) -> int:
        return len(self.sessions_per_student)

    @property
    def mean_sessions_per_student(self) -> float:
        if not self.sessions_per_student:
            return 0.0
        return float(np.mean(list(self.sessions_per_student.values())))

    @property
    def std_sessions_per_student(self) -> float:
        # population stddev
        if not self.sessions_per_student:
            return 0.0
        return float(np.std(list(self.sessions_per_student.values())))

    def merge(self, other: CorpusStats) -> CorpusStats:
        return CorpusStats(
            n_sequences=self.n_sequences + other.n_sequences,
            n_actions=self.n_actions + other.n_actions,
            n_lessons=self.n_lessons + other.n_lessons,
            n_correct=self.n_correct + other.n_correct,
            n_wrong=self.n_wrong + other.n_wrong,
            length_histogram=self.length_histogram + other.length_histogram,
            sessions_per_student=self.sessions_per_student + other.sessions_per_student,
        )

    def to_json(self) -> dict[str, Any]:
        return {
            "n_sequences": self.n_sequences,
            "n_actions": self.n_actions,
            "n_lessons": self.n_lessons,
            "n_correct": self.n_correct,
            "n_wrong": self.n_wrong,
            "n_students": self.n_students,
            "sessions_per_student_mean": self.mean_sessions_per_student,
            "sessions_per_student_std": self.std_sessions_per_student,
            "length_histogram": {str(k): v for k, v in sorted(self.length_histogram.items())},
        }


def corpus_stats(sessions: Iterable[Session]) -> CorpusStats:
    kinds: Counter[tuple[ActionKind, bool | None]] = Counter()
    lengths: Counter[int] = Counter()
    per_student: Counter[str] = Counter()
    for session in sessions:
        kinds.update((event.kind, event.correct) for event in session.events)
        lengths[len(session.events)] += 1
        per_student[session.student_id] += 1
    lessons = kinds[(ActionKind.LESSON, None)]
    correct = kinds[(ActionKind.QUESTION, True)]
    wrong = kinds[(ActionKind.QUESTION, False)]
    return CorpusStats(
        n_sequences=sum(lengths.values()),
        n_actions=lessons + correct + wrong,
        n_lessons=lessons,
        n_correct=correct,
        n_wrong=wrong,
        length_histogram=lengths,
        sessions_per_student=per_student,
    )
