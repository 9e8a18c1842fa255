from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

import numpy as np
from sklearn.metrics.cluster import contingency_matrix

from chainmix.errors import DataValidationError


class PurityError(DataValidationError):
    pass


@dataclass(frozen=True)
class PurityReport:
    # best overlap fraction of every nonempty estimated cluster, in order of cluster label
    per_cluster: tuple[float, ...]
    average_purity: float
    n_clusters: int
    k_true: int
    weighted_purity: float

    def to_json(self) -> dict[str, Any]:
        return {
            "per_cluster": list(self.per_cluster),
            "average_purity": self.average_purity,
            "weighted_purity": self.weighted_purity,
            "n_clusters": self.n_clusters,
            "k_true": self.k_true,
        }


def average_purity(estimated: Sequence[Any] | np.ndarray, truth: Sequence[Any] | np.ndarray) -> PurityReport:
    """
    Mean over the estimated clusters of the largest fraction of the cluster that shares one true label.
    Every cluster counts the same regardless of its size; `weighted_purity` is the size-weighted variant.
    """
    estimated = np.asarray(estimated)
    truth = np.asarray(truth)
    if estimated.shape[0] != truth.shape[0]:
        msg = f"Cannot compare {estimated.shape[0]} cluster labels with {truth.shape[0]} true labels"
        raise PurityError(msg)
    if estimated.shape[0] == 0:
        msg = "Cannot compute purity of an empty clustering"
        raise PurityError(msg)

    # rows are true labels, columns estimated clusters (only the ones that occur)
    contingency = contingency_matrix(truth, estimated)
    best = contingency.max(axis=0)
    fractions = best / contingency.sum(axis=0)
    return PurityReport(
        per_cluster=tuple(float(f) for f in fractions),
        average_purity=float(fractions.mean()),
        n_clusters=contingency.shape[1],
        k_true=contingency.shape[0],
        weighted_purity=float(best.sum() / estimated.shape[0]),
    )
