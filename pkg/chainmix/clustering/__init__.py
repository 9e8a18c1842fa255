from chainmix.clustering.cluster_config import ClusterConfig, ConfigError
from chainmix.clustering.kmeans import (
    ClusterModel,
    ClusteringError,
    Reestimation,
    SweepRow,
    assign_step,
    fit,
    fit_table,
    k_sweep,
    random_prior,
    reestimate_step,
)
from chainmix.clustering.model_io import SavedModel, load_model, model_document, save_model, write_assignments

__all__ = [
    "ClusterConfig",
    "ClusterModel",
    "ClusteringError",
    "ConfigError",
    "Reestimation",
    "SavedModel",
    "SweepRow",
    "assign_step",
    "fit",
    "fit_table",
    "k_sweep",
    "load_model",
    "model_document",
    "random_prior",
    "reestimate_step",
    "save_model",
    "write_assignments",
]
