from __future__ import annotations

import logging
from argparse import Namespace
from typing import Sequence

import numpy as np
import pandas as pd

from chainmix.clustering.kmeans import assign_step
from chainmix.clustering.model_io import load_model, write_assignments
from chainmix.commands.cluster_cmd import cluster_config
from chainmix.commands.manifest import Outputs, RunManifest, run_command
from chainmix.errors import DataValidationError
from chainmix.evaluation.metrics import assigned_log_likelihoods
from chainmix.evaluation.permutation import PermutationRow, permutation_baseline
from chainmix.evaluation.profiles import chain_stats, student_profiles
from chainmix.evaluation.purity import average_purity
from chainmix.ingest.sessions import read_sessions
from chainmix.utils.json_utils import json_save
from chainmix.utils.tables import write_csv

logger = logging.getLogger()


def read_truth(path: str, column: str, session_ids: Sequence[str]) -> list[str]:
    """True labels of the given sessions, from a CSV with a session_id column"""
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    missing = {"session_id", column} - set(frame.columns)
    if missing:
        msg = f'"{path}" has no {", ".join(sorted(missing))} column'
        raise DataValidationError(msg)
    labels = dict(zip(frame["session_id"], frame[column]))
    unknown = [session_id for session_id in session_ids if session_id not in labels]
    if unknown:
        msg = f'{len(unknown)} session(s) have no label in "{path}", for example "{unknown[0]}"'
        raise DataValidationError(msg)
    return [labels[session_id] for session_id in session_ids]


def run(options: Namespace) -> RunManifest:
    inputs = [options.model, options.sessions] + ([options.truth] if options.truth else [])

    def compute() -> Outputs:
        saved = load_model(options.model)
        records = read_sessions(options.sessions)
        if not records:
            msg = f'"{options.sessions}" has no sessions'
            raise DataValidationError(msg)
        seqs = [record.sequence for record in records]
        session_ids = [record.session_id for record in records]

        assignments = assign_step(seqs, saved.chains)
        scores = assigned_log_likelihoods(seqs, saved.chains, assignments)
        supported = np.isfinite(scores)
        summary = {
            "k": saved.k,
            "n_sequences": len(seqs),
            "sum_log_likelihood": float(scores[supported].sum()) if supported.any() else float("-inf"),
            "unsupported_count": int((~supported).sum()),
        }
        stats = [row.to_json() for row in chain_stats(seqs, assignments, saved.k)]

        outputs: Outputs = {
            "assignments.csv": lambda path: write_assignments(path, session_ids, assignments.tolist(), scores.tolist()),
            "chain_stats.csv": lambda path: write_csv(stats, path),
            "chain_stats.json": lambda path: json_save(stats, path),
            "summary.json": lambda path: json_save(summary, path),
        }

        if options.truth:
            truth = read_truth(options.truth, options.truth_column, session_ids)
            purity = {**average_purity(assignments, truth).to_json(), "truth_column": options.truth_column}
            logger.info("Average purity %.4f", purity["average_purity"])
            outputs["purity.json"] = lambda path: json_save(purity, path)

        if options.profiles:
            profiles = student_profiles(
                zip((record.student_id for record in records), assignments.tolist()), saved.k
            )
            rows = [
                {
                    "student_id": profile.student_id,
                    **{f"count_{j}": c for j, c in enumerate(profile.counts)},
                    **{f"share_{j}": p for j, p in enumerate(profile.distribution)},
                    "support_size": profile.support_size,
                }
                for profile in profiles.profiles
            ]
            profile_summary = profiles.to_json()
            outputs["profiles.csv"] = lambda path: write_csv(rows, path)
            outputs["profiles_summary.json"] = lambda path: json_save(profile_summary, path)

        if options.permutation_baseline:
            config = cluster_config(options)
            baseline = permutation_baseline(seqs, options.k_range or [saved.k], config)
            table = [row._asdict() for row in baseline]
            outputs["permutation_baseline.csv"] = lambda path: write_csv(
                table, path, columns=list(PermutationRow._fields)
            )

        return outputs

    return run_command("eval", options, inputs, compute)
