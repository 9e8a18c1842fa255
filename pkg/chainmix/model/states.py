from __future__ import annotations

from enum import IntEnum

import numpy as np


class State(IntEnum):
    """The eight states of the session model. The integer value is the row/column index in a chain."""

    S = 0
    L = 1
    QR = 2
    QW = 3
    L_C = 4
    QR_C = 5
    QW_C = 6
    E = 7

    @property
    def label(self) -> str:
        return LABELS[self]

    @property
    def is_topic_change(self) -> bool:
        return self in (State.L_C, State.QR_C, State.QW_C)

    @classmethod
    def from_label(cls, label: str) -> State:
        try:
            return _BY_LABEL[label]
        except KeyError:
            msg = f'Unknown state label "{label}"'
            raise ValueError(msg) from None


N_STATES = len(State)
LABELS = ("S", "L", "Qr", "Qw", "L_c", "Qr_c", "Qw_c", "E")
_BY_LABEL = {label: State(i) for i, label in enumerate(LABELS)}
# plain list indexing is much faster than State(i) when decoding large corpora
STATES_BY_INDEX = list(State)

ACTION_STATES = (State.L, State.QR, State.QW, State.L_C, State.QR_C, State.QW_C)
SAME_TOPIC_STATES = (State.L, State.QR, State.QW)


def _allowed_edges() -> np.ndarray:
    allowed = np.zeros((N_STATES, N_STATES), dtype=bool)
    # a session starts with an action, and the first action can't be a topic change
    allowed[State.S, list(SAME_TOPIC_STATES)] = True
    for source in ACTION_STATES:
        allowed[source, list(ACTION_STATES)] = True
        allowed[source, State.E] = True
    return allowed


ALLOWED_EDGES = _allowed_edges()
ALLOWED_EDGES.setflags(write=False)


def edge_labels() -> list[list[str]]:
    """Allowed edges as [from, to] label pairs, in row-major order"""
    rows, cols = np.nonzero(ALLOWED_EDGES)
    return [[LABELS[r], LABELS[c]] for r, c in zip(rows, cols)]
