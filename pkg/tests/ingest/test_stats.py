from datetime import datetime, timedelta, timezone

import pytest

from chainmix.ingest.events import ActionEvent
from chainmix.ingest.sessions import Session
from chainmix.ingest.stats import CorpusStats, corpus_stats
from chainmix.model.sequence import ActionKind

T0 = datetime(2016, 9, 1, 10, 0, tzinfo=timezone.utc)


def session(student, index, *actions):
    events = tuple(
        ActionEvent(student, T0 + timedelta(seconds=i), kind, correct, "t1")
        for i, (kind, correct) in enumerate(actions)
    )
    return Session(student, events, index)


LESSON = (ActionKind.LESSON, None)
RIGHT = (ActionKind.QUESTION, True)
WRONG = (ActionKind.QUESTION, False)


class TestCorpusStats:
    def test_single_right_answer(self):
        stats = corpus_stats([session("a", 0, RIGHT)])
        assert stats.n_sequences == 1
        assert stats.n_actions == 1
        assert stats.n_correct == 1
        assert stats.n_wrong == 0

    def test_lesson_and_wrong_answer(self):
        stats = corpus_stats([session("a", 0, LESSON), session("a", 1, WRONG)])
        assert stats.n_lessons == 1
        assert stats.n_wrong == 1
        assert stats.n_actions == 2
        assert stats.length_histogram == {1: 2}

    def test_sessions_per_student(self):
        sessions = [session("a", i, LESSON) for i in range(2)] + [session("b", i, RIGHT) for i in range(4)]
        stats = corpus_stats(sessions)
        assert stats.n_students == 2
        assert stats.mean_sessions_per_student == 3
        assert stats.std_sessions_per_student == 1

    def test_empty(self):
        stats = corpus_stats([])
        assert stats == CorpusStats()
        assert stats.mean_sessions_per_student == 0.0

    def test_merge_matches_a_single_pass(self):
        first = [session("a", 0, LESSON, RIGHT), session("b", 0, WRONG)]
        second = [session("a", 1, RIGHT, RIGHT, WRONG)]
        merged = corpus_stats(first).merge(corpus_stats(second))
        assert merged == corpus_stats(first + second)
        assert corpus_stats(second).merge(corpus_stats(first)) == merged

    def test_to_json(self):
        data = corpus_stats([session("a", 0, LESSON, RIGHT)]).to_json()
        assert data["n_actions"] == 2
        assert data["length_histogram"] == {"2": 1}
        assert data["sessions_per_student_std"] == pytest.approx(0.0)
