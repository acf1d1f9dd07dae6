"""k-nearest-neighbor classifier, exact scan, majority vote."""

from __future__ import annotations

import numpy as np

from ..errors import SizeError
from .base import TrainedModel, check_training_data


class KnnModel(TrainedModel):
    family = "knn"

    def __init__(self, X: np.ndarray, y: np.ndarray, k: int):
        super().__init__({"n_neighbors": k}, X.shape[1])
        self.X_train = X
        self.y_train = y
        self.k = k

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        """Fraction of the k nearest training rows labeled 1.

        Even-vote ties give exactly 0.5 and therefore label 0.
        """
        X = np.atleast_2d(np.asarray(X, dtype=float))
        scores = np.empty(len(X))
        n = len(self.y_train)
        for i, row in enumerate(X):
            d2 = ((self.X_train - row) ** 2).sum(axis=1)
            order = np.lexsort((np.arange(n), d2))[: self.k]
            scores[i] = self.y_train[order].mean()
        return scores

    def params_dict(self) -> dict:
        return {
            "X_train": self.X_train.tolist(),
            "y_train": self.y_train.tolist(),
            "k": self.k,
        }


def fit_knn(X, y, k: int = 12) -> KnnModel:
    X, y = check_training_data(X, y)
    if k > len(y):
        raise SizeError(f"k={k} exceeds the {len(y)} training rows")
    return KnnModel(X, y, int(k))
