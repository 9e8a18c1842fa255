from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass
from datetime import datetime
from pathlib import Path
from typing import NamedTuple, TextIO

import pandas as pd

from chainmix.errors import DataValidationError
from chainmix.model.sequence import Action, ActionKind

logger = logging.getLogger()

COLUMNS = ["student_id", "timestamp", "kind", "correct", "topic_id"]
MAX_MALFORMED_FRACTION = 0.5
# date, time and a Z or numeric offset are all required
RFC3339 = r"^\d{4}-\d{2}-\d{2}[T ]\d{2}:\d{2}:\d{2}(\.\d+)?(Z|[+-]\d{2}:\d{2})$"


class EventParseError(DataValidationError):
    pass


@dataclass(frozen=True)
class ActionEvent:
    student_id: str
    timestamp: datetime
    kind: ActionKind
    correct: bool | None
    topic_id: str

    @property
    def action(self) -> Action:
        return Action(self.kind, self.correct, self.topic_id)


class ParseReport(NamedTuple):
    events: list[ActionEvent]
    n_lines: int
    n_malformed: int


def parse_events(source: TextIO | str | Path, has_header: bool = False) -> ParseReport:
    """
    Parse CSV event lines: student_id,timestamp(RFC3339),kind(lesson|question),correct(1|0|empty),topic_id

    Malformed lines are skipped and counted. More than half of the lines being malformed means the
    input is most likely not an event log at all, so that raises EventParseError.
    Raises OSError if the input can't be read, and EventParseError if it isn't UTF-8 text.
    """
    try:
        if isinstance(source, (str, Path)):
            text = Path(source).read_text(encoding="utf-8")
        else:
            text = source.read()
    except UnicodeDecodeError as e:
        msg = f"Event log is not UTF-8 text: {e}"
        raise EventParseError(msg) from None

    lines = [line for line in text.splitlines() if line.strip()]
    if has_header and lines:
        lines = lines[1:]
    n_lines = len(lines)
    if not n_lines:
        return ParseReport([], 0, 0)

    frame = pd.read_csv(
        io.StringIO("\n".join(lines)),
        header=None,
        names=COLUMNS,
        index_col=False,
        dtype=str,
        keep_default_na=False,
        quoting=csv.QUOTE_NONE,
        on_bad_lines="skip",
    ).fillna("")
    frame = frame.apply(lambda column: column.str.strip())

    timestamps = pd.to_datetime(frame["timestamp"], utc=True, errors="coerce", format="ISO8601").dt.floor("s")
    is_lesson = frame["kind"] == ActionKind.LESSON.value
    is_question = frame["kind"] == ActionKind.QUESTION.value
    valid = (
        (frame["student_id"] != "")
        & (frame["topic_id"] != "")
        & frame["timestamp"].str.match(RFC3339)
        & timestamps.notna()
        & ((is_lesson & (frame["correct"] == "")) | (is_question & frame["correct"].isin(["0", "1"])))
    )

    n_malformed = n_lines - int(valid.sum())
    if n_malformed:
        logger.warning("Skipped %s malformed event line(s) out of %s", n_malformed, n_lines)
    if n_malformed > MAX_MALFORMED_FRACTION * n_lines:
        msg = (
            f"{n_malformed} of {n_lines} lines are malformed. Expected "
            f"{','.join(COLUMNS)} with RFC3339 timestamps, kind lesson|question and correct 1|0|empty"
        )
        raise EventParseError(msg)

    rows = frame[valid]
    events = [
        ActionEvent(
            student_id=student_id,
            timestamp=timestamp.to_pydatetime(),
            kind=ActionKind(kind),
            correct=None if correct == "" else correct == "1",
            topic_id=topic_id,
        )
        for student_id, timestamp, kind, correct, topic_id in zip(
            rows["student_id"], timestamps[valid], rows["kind"], rows["correct"], rows["topic_id"]
        )
    ]
    return ParseReport(events, n_lines, n_malformed)
