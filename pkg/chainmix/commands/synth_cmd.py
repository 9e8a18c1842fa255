from __future__ import annotations

import logging
from argparse import Namespace

from chainmix.clustering.cluster_config import ClusterConfig
from chainmix.clustering.model_io import model_document
from chainmix.commands.manifest import Outputs, RunManifest, run_command
from chainmix.ingest.sessions import SessionRecord, write_sessions
from chainmix.synthetic.noise_sweep import (
    NoiseCell,
    NoiseSummary,
    SyntheticConfig,
    draw_corpus,
    noise_sweep_experiment,
)
from chainmix.utils.json_utils import json_save
from chainmix.utils.rng import derive_rng
from chainmix.utils.tables import write_csv

logger = logging.getLogger()

SYNTHETIC_STUDENT = "synthetic"


def run(options: Namespace) -> RunManifest:
    def compute() -> Outputs:
        config = SyntheticConfig(
            k_true=options.k_true,
            n_sequences=options.n,
            end_probability=options.end_prob,
            repetitions=options.reps,
            rng_seed=options.seed,
            workers=options.workers,
        )
        clustering = ClusterConfig(
            k=options.k_true,
            restarts=1,
            convergence_fraction=options.convergence_frac,
            max_iterations=options.max_iters,
            smoothing=options.smoothing,
            rng_seed=options.seed,
        )
        result = noise_sweep_experiment(config, options.alphas, clustering)
        for row in result.summary:
            logger.info("alpha=%s: mean purity %.4f", row.alpha, row.mean_purity)

        # the corpus of the first repetition, for feeding to cluster and eval
        corpus = draw_corpus(config, derive_rng(config.rng_seed, 0))
        records = [
            SessionRecord(seq.source_session_id, SYNTHETIC_STUDENT, seq, int(generator), int(label))
            for seq, generator, label in zip(corpus.sequences, corpus.generators, corpus.labels)
        ]
        labels = {
            "session_id": [record.session_id for record in records],
            "label": [record.label for record in records],
            "generator": [record.generator for record in records],
        }
        generators = model_document(corpus.chains, config, {"role": "generators"})
        return {
            "noise_sweep.csv": lambda path: write_csv(
                [cell._asdict() for cell in result.cells], path, columns=list(NoiseCell._fields)
            ),
            "noise_sweep_summary.csv": lambda path: write_csv(
                [row._asdict() for row in result.summary], path, columns=list(NoiseSummary._fields)
            ),
            "corpus.jsonl": lambda path: write_sessions(path, records),
            "labels.csv": lambda path: write_csv(labels, path),
            "generators.json": lambda path: json_save(generators, path),
        }

    return run_command("synth", options, [], compute)
