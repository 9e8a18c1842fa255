from chainmix.ingest.events import ActionEvent, EventParseError, ParseReport, parse_events
from chainmix.ingest.sessions import (
    DEFAULT_GAP,
    Session,
    SessionRecord,
    StateLabelError,
    read_sessions,
    sessionize,
    write_sessions,
)
from chainmix.ingest.stats import CorpusStats, corpus_stats

__all__ = [
    "DEFAULT_GAP",
    "ActionEvent",
    "CorpusStats",
    "EventParseError",
    "ParseReport",
    "Session",
    "SessionRecord",
    "StateLabelError",
    "corpus_stats",
    "parse_events",
    "read_sessions",
    "sessionize",
    "write_sessions",
]
