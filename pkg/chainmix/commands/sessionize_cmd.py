from __future__ import annotations

import logging
from argparse import Namespace
from datetime import timedelta

from chainmix.commands.manifest import Outputs, RunManifest, run_command
from chainmix.errors import UsageError
from chainmix.ingest.events import parse_events
from chainmix.ingest.sessions import SessionRecord, sessionize, write_sessions
from chainmix.ingest.stats import corpus_stats
from chainmix.utils.json_utils import json_save
from chainmix.utils.tables import write_csv

logger = logging.getLogger()


def run(options: Namespace) -> RunManifest:
    if options.gap_minutes <= 0:
        msg = f"--gap-minutes must be positive (got {options.gap_minutes})"
        raise UsageError(msg)

    def compute() -> Outputs:
        report = parse_events(options.input, has_header=options.has_header)
        sessions = sessionize(report.events, timedelta(minutes=options.gap_minutes))
        records = [SessionRecord(s.session_id, s.student_id, s.encode()) for s in sessions]
        stats = corpus_stats(sessions)
        summary = {**stats.to_json(), "n_lines": report.n_lines, "n_malformed": report.n_malformed}
        scalars = {key: [value] for key, value in summary.items() if key != "length_histogram"}
        histogram = sorted(stats.length_histogram.items())
        logger.info("%s sessions from %s students", stats.n_sequences, stats.n_students)
        return {
            "sessions.jsonl": lambda path: write_sessions(path, records),
            "corpus_stats.json": lambda path: json_save(summary, path),
            "corpus_stats.csv": lambda path: write_csv(scalars, path, columns=sorted(scalars)),
            "length_histogram.csv": lambda path: write_csv(
                {"length": [h[0] for h in histogram], "count": [h[1] for h in histogram]}, path
            ),
        }

    return run_command("sessionize", options, [options.input], compute)
