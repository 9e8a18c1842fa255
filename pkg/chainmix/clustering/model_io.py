from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import chainmix
from chainmix.clustering.cluster_config import ClusterConfig
from chainmix.clustering.kmeans import ClusterModel
from chainmix.errors import DataValidationError
from chainmix.ingest.sessions import StateLabelError
from chainmix.model.chain import MarkovChain
from chainmix.model.states import LABELS, edge_labels
from chainmix.utils.json_utils import json_load, json_save
from chainmix.utils.tables import write_csv

logger = logging.getLogger()

MODEL_FORMAT = "chainmix-model"


@dataclass(frozen=True)
class SavedModel:
    chains: list[MarkovChain]
    config: dict[str, Any]
    diagnostics: dict[str, Any]

    @property
    def k(self) -> int:
        return len(self.chains)


def model_document(
    chains: Sequence[MarkovChain], config: ClusterConfig | dict[str, Any], diagnostics: dict[str, Any] | None = None
) -> dict[str, Any]:
    return {
        "format": MODEL_FORMAT,
        "version": chainmix.version,
        "k": len(chains),
        "states": list(LABELS),
        "edges": edge_labels(),
        "config": dict(config),
        "chains": [chain.to_rows() for chain in chains],
        "diagnostics": diagnostics or {},
    }


def model_diagnostics(model: ClusterModel) -> dict[str, Any]:
    return {
        "sum_log_likelihood": model.sum_log_likelihood,
        "iterations_run": model.iterations_run,
        "reassignment_history": model.reassignment_history,
        "log_likelihood_history": model.log_likelihood_history,
        "unsupported_count": model.unsupported_count,
        "reseed_count": model.reseed_count,
        "restart_log_likelihoods": model.restart_log_likelihoods,
        "chosen_restart": model.chosen_restart,
        "cluster_sizes": model.cluster_sizes(),
    }


def save_model(path: str | Path, model: ClusterModel, config: ClusterConfig) -> None:
    json_save(model_document(model.chains, config, model_diagnostics(model)), path)


def load_model(path: str | Path) -> SavedModel:
    """Read a model file, checking that its state labels are the ones this version uses"""
    document = json_load(path, strict=True)
    if not isinstance(document, dict) or document.get("format") != MODEL_FORMAT:
        msg = f'"{path}" is not a {MODEL_FORMAT} file'
        raise DataValidationError(msg)
    states = document.get("states")
    if states != list(LABELS):
        msg = f'State labels in "{path}" ({states}) don\'t match the model states ({list(LABELS)})'
        raise StateLabelError(msg)
    chains = [MarkovChain(rows) for rows in document.get("chains", [])]
    if not chains:
        msg = f'"{path}" has no chains'
        raise DataValidationError(msg)
    return SavedModel(chains, document.get("config", {}), document.get("diagnostics", {}))


def write_assignments(
    path: str | Path, session_ids: Sequence[str], assignments: Sequence[int], log_likelihoods: Sequence[float]
) -> None:
    write_csv(
        {"session_id": list(session_ids), "chain_index": list(assignments), "log_likelihood": list(log_likelihoods)},
        path,
    )

