"""Shared fit/predict contract for all classifier families.

Every trained model exposes predict_score (probability for probabilistic
families, signed margin for the SVM) and predict, which thresholds the
score: probability > 0.5, margin >= 0. Exact 0.5 ties fall to label 0,
the majority class in this problem.
"""

from __future__ import annotations

import numpy as np

FAMILIES = ("lr", "knn", "svm", "mlp", "gnb", "rf", "gbt")

# which families train and predict on standardized features
SCALED_FAMILIES = frozenset({"svm", "mlp", "knn", "gnb"})


class TrainedModel:
    family: str = ""
    threshold: float = 0.5
    margin_based: bool = False

    def __init__(self, hyperparameters: dict, feature_count: int):
        self.hyperparameters = dict(hyperparameters)
        self.feature_count = int(feature_count)

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def predict(self, X: np.ndarray) -> np.ndarray:
        scores = self.predict_score(X)
        if self.margin_based:
            return (scores >= 0.0).astype(int)
        return (scores > self.threshold).astype(int)

    def params_dict(self) -> dict:
        """Family-specific flattened parameters for serialization."""
        raise NotImplementedError


def check_training_data(X: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    from ..errors import DataError, TrainingError

    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if X.ndim != 2 or len(X) != len(y):
        raise DataError(f"bad training shapes X{X.shape} y{y.shape}")
    if not np.isfinite(X).all():
        raise DataError("non-finite values in the feature matrix")
    if len(np.unique(y)) < 2:
        raise TrainingError("training labels contain a single class")
    return X, y
