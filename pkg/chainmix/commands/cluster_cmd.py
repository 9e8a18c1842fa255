from __future__ import annotations

import logging
from argparse import Namespace

from chainmix.clustering.cluster_config import ClusterConfig
from chainmix.clustering.kmeans import SweepRow, fit, k_sweep
from chainmix.clustering.model_io import load_model, save_model, write_assignments
from chainmix.commands.manifest import Outputs, RunManifest, run_command
from chainmix.errors import UsageError
from chainmix.ingest.sessions import read_sessions
from chainmix.utils.tables import write_csv

logger = logging.getLogger()


def cluster_config(options: Namespace, k: int = 1) -> ClusterConfig:
    return ClusterConfig(
        k=k,
        restarts=options.restarts,
        convergence_fraction=options.convergence_frac,
        max_iterations=options.max_iters,
        smoothing=options.smoothing,
        rng_seed=options.seed,
    )


def run(options: Namespace) -> RunManifest:
    if options.init_model and options.k_range:
        msg = "--init-model can't be combined with --k-range"
        raise UsageError(msg)
    inputs = [options.sessions] + ([options.init_model] if options.init_model else [])

    def compute() -> Outputs:
        config = cluster_config(options, 1 if options.k is None else options.k)
        config.validate()
        records = read_sessions(options.sessions)
        seqs = [record.sequence for record in records]

        if options.k_range:
            rows = k_sweep(seqs, options.k_range, config)
            table = [row._asdict() for row in rows]
            return {"sweep.csv": lambda path: write_csv(table, path, columns=list(SweepRow._fields))}

        priors = None
        if options.init_model:
            saved = load_model(options.init_model)
            if saved.k != config.k:
                msg = f"--k {config.k} doesn't match the {saved.k} chains of {options.init_model}"
                raise UsageError(msg)
            priors = saved.chains
            config.restarts = 1
        model = fit(seqs, config, priors)
        logger.info("Cluster sizes: %s", model.cluster_sizes())
        return {
            "model.json": lambda path: save_model(path, model, config),
            "assignments.csv": lambda path: write_assignments(
                path,
                [record.session_id for record in records],
                model.assignments.tolist(),
                model.sequence_log_likelihoods.tolist(),
            ),
        }

    return run_command("cluster", options, inputs, compute)
