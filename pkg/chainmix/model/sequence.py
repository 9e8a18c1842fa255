from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

from chainmix.errors import DataValidationError
from chainmix.model.states import ALLOWED_EDGES, LABELS, State


class EncodingError(DataValidationError):
    pass


class InvalidSequenceError(DataValidationError):
    pass


class ActionKind(str, Enum):
    LESSON = "lesson"
    QUESTION = "question"


class Action(NamedTuple):
    kind: ActionKind
    correct: bool | None
    topic: str


_SAME_TOPIC = {
    (ActionKind.LESSON, None): State.L,
    (ActionKind.QUESTION, True): State.QR,
    (ActionKind.QUESTION, False): State.QW,
}
_CHANGED_TOPIC = {
    (ActionKind.LESSON, None): State.L_C,
    (ActionKind.QUESTION, True): State.QR_C,
    (ActionKind.QUESTION, False): State.QW_C,
}


@dataclass(frozen=True)
class EncodedSequence:
    """A session as a path through the model: S, one state per action, E."""

    states: tuple[State, ...]
    source_session_id: str = ""

    def __post_init__(self) -> None:
        states = self.states
        if len(states) < 3:  # noqa: PLR2004
            msg = f"Sequence {self.source_session_id!r} has {len(states)} states, at least 3 are required"
            raise InvalidSequenceError(msg)
        if states[0] != State.S or states[-1] != State.E:
            msg = f"Sequence {self.source_session_id!r} must start with S and end with E"
            raise InvalidSequenceError(msg)
        interior = states[1:-1]
        if State.S in interior or State.E in interior:
            msg = f"Sequence {self.source_session_id!r} has S or E inside the path"
            raise InvalidSequenceError(msg)
        if not ALLOWED_EDGES[State.S, interior[0]]:
            msg = f"Sequence {self.source_session_id!r} starts with a topic change ({interior[0].label})"
            raise InvalidSequenceError(msg)

    @property
    def m(self) -> int:
        """Number of transitions"""
        return len(self.states) - 1

    @property
    def interior(self) -> tuple[State, ...]:
        return self.states[1:-1]

    @property
    def n_actions(self) -> int:
        return len(self.states) - 2

    def labels(self) -> list[str]:
        return [LABELS[s] for s in self.states]

    @classmethod
    def from_labels(cls, labels: Sequence[str], source_session_id: str = "") -> EncodedSequence:
        return cls(tuple(State.from_label(label) for label in labels), source_session_id)

    @classmethod
    def from_interior(cls, interior: Sequence[State], source_session_id: str = "") -> EncodedSequence:
        return cls((State.S, *interior, State.E), source_session_id)


def encode_session(actions: Sequence[Action], source_session_id: str = "") -> EncodedSequence:
    """
    Map an ordered list of actions to states. The first action is always a same-topic state, later
    actions are topic-change states when their topic differs from the previous action's topic.
    """
    if not actions:
        msg = "empty session"
        raise EncodingError(msg)

    interior: list[State] = []
    previous_topic: str | None = None
    for action in actions:
        try:
            kind = ActionKind(action.kind)
        except ValueError:
            msg = "malformed action"
            raise EncodingError(msg) from None
        correct = action.correct if kind is ActionKind.QUESTION else None
        if kind is ActionKind.QUESTION and correct is None:
            msg = "malformed action"
            raise EncodingError(msg)
        if kind is ActionKind.LESSON and action.correct is not None:
            msg = "malformed action"
            raise EncodingError(msg)
        changed = previous_topic is not None and action.topic != previous_topic
        table = _CHANGED_TOPIC if changed else _SAME_TOPIC
        interior.append(table[(kind, correct)])
        previous_topic = action.topic

    return EncodedSequence.from_interior(interior, source_session_id)
