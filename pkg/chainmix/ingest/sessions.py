from __future__ import annotations

import logging
from dataclasses import dataclass
from datetime import timedelta
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
import pandas as pd

from chainmix.errors import DataValidationError
from chainmix.ingest.events import ActionEvent
from chainmix.model.sequence import EncodedSequence, InvalidSequenceError, encode_session
from chainmix.utils.json_utils import jsonl_load, jsonl_save

logger = logging.getLogger()

DEFAULT_GAP = timedelta(minutes=15)


class StateLabelError(DataValidationError):
    pass


@dataclass(frozen=True)
class Session:
    student_id: str
    events: tuple[ActionEvent, ...]
    session_index: int

    @property
    def session_id(self) -> str:
        return f"{self.student_id}:{self.session_index}"

    def encode(self) -> EncodedSequence:
        return encode_session([event.action for event in self.events], self.session_id)


@dataclass(frozen=True)
class SessionRecord:
    """One line of a session file"""

    session_id: str
    student_id: str
    sequence: EncodedSequence
    generator: int | None = None
    label: int | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "session_id": self.session_id,
            "student_id": self.student_id,
            "states": self.sequence.labels(),
            "generator": self.generator,
            "label": self.label,
        }


def sessionize(events: Sequence[ActionEvent], gap: timedelta = DEFAULT_GAP) -> list[Session]:
    """
    Split each student's events into sessions. A new session starts when the time since the previous
    event is >= gap. Students come out in sorted order; events with equal timestamps keep input order.
    """
    if not events:
        return []

    frame = pd.DataFrame(
        {
            "student_id": [event.student_id for event in events],
            "timestamp": pd.to_datetime([event.timestamp for event in events], utc=True),
            "position": np.arange(len(events)),
        }
    ).sort_values(["student_id", "timestamp", "position"])

    gaps = frame.groupby("student_id", sort=False)["timestamp"].diff()
    starts_session = (gaps.isna() | (gaps >= pd.Timedelta(gap))).to_numpy()
    session_index = pd.Series(starts_session, index=frame.index).groupby(frame["student_id"]).cumsum() - 1

    ordered = [events[i] for i in frame["position"]]
    boundaries = np.flatnonzero(starts_session)
    ends = [*boundaries[1:].tolist(), len(ordered)]
    indexes = session_index.to_numpy()
    return [
        Session(ordered[start].student_id, tuple(ordered[start:end]), int(indexes[start]))
        for start, end in zip(boundaries.tolist(), ends)
    ]


def write_sessions(path: str | Path, records: Iterable[SessionRecord]) -> int:
    return jsonl_save((record.to_json() for record in records), path)


def read_sessions(path: str | Path) -> list[SessionRecord]:
    """Read a session file. Unknown state labels or invalid paths raise StateLabelError."""
    records = []
    for record in jsonl_load(path):
        session_id = str(record.get("session_id", ""))
        try:
            sequence = EncodedSequence.from_labels(record["states"], session_id)
        except KeyError:
            msg = f'Session "{session_id}" in "{path}" has no states'
            raise StateLabelError(msg) from None
        except (ValueError, InvalidSequenceError) as e:
            msg = f'Session "{session_id}" in "{path}" does not match the model states: {e}'
            raise StateLabelError(msg) from None
        records.append(
            SessionRecord(
                session_id=session_id,
                student_id=str(record.get("student_id", "")),
                sequence=sequence,
                generator=record.get("generator"),
                label=record.get("label"),
            )
        )
    logger.info('Read %s sessions from "%s"', len(records), path)
    return records
