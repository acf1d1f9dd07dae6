"""Gini decision trees and the bootstrap-aggregated forest.

Candidate thresholds at a node are every midpoint between consecutive
sorted unique values of the inspected feature; the split minimizing the
weighted Gini impurity wins, ties going to the earliest (feature order,
then lower threshold). Nodes stop at purity, below min_samples_split, or
when no split leaves both children with min_samples_leaf rows.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigurationError
from ..rng import make_generator
from .base import TrainedModel, check_training_data

LEAF = -1


def gini_best_split(
    X: np.ndarray,
    y: np.ndarray,
    feature_ids: np.ndarray,
    min_samples_leaf: int,
):
    """Best (feature, threshold, impurity) over the given features.

    Returns None when no admissible split exists.
    """
    n = len(y)
    best = None
    for f in feature_ids:
        values = X[:, f]
        order = np.argsort(values, kind="stable")
        sv = values[order]
        sy = y[order]
        # split after position i (1-based prefix) where the value changes
        cum_pos = np.cumsum(sy)
        boundaries = np.flatnonzero(sv[1:] > sv[:-1]) + 1
        for i in boundaries:
            if i < min_samples_leaf or n - i < min_samples_leaf:
                continue
            left_pos = cum_pos[i - 1]
            right_pos = cum_pos[-1] - left_pos
            p1l = left_pos / i
            p1r = right_pos / (n - i)
            gini = (i * 2.0 * p1l * (1.0 - p1l) + (n - i) * 2.0 * p1r * (1.0 - p1r)) / n
            if best is None or gini < best[2] - 1e-15:
                threshold = (sv[i - 1] + sv[i]) / 2.0
                best = (int(f), float(threshold), float(gini))
    return best


class _TreeBuilder:
    def __init__(self, max_features, min_samples_leaf, min_samples_split, rng):
        self.max_features = max_features
        self.min_samples_leaf = min_samples_leaf
        self.min_samples_split = min_samples_split
        self.rng = rng
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def _new_node(self) -> int:
        self.feature.append(LEAF)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def build(self, X, y) -> int:
        node = self._new_node()
        n = len(y)
        n_pos = int(y.sum())
        if n_pos == 0 or n_pos == n or n < self.min_samples_split:
            self.value[node] = self._leaf_label(n_pos, n)
            return node
        d = X.shape[1]
        k = min(self.max_features, d)
        if self.rng is not None:
            features = np.sort(self.rng.choice(d, size=k, replace=False))
        else:
            features = np.arange(k)
        split = gini_best_split(X, y, features, self.min_samples_leaf)
        if split is None:
            self.value[node] = self._leaf_label(n_pos, n)
            return node
        f, threshold, _ = split
        mask = X[:, f] <= threshold
        self.feature[node] = f
        self.threshold[node] = threshold
        self.left[node] = self.build(X[mask], y[mask])
        self.right[node] = self.build(X[~mask], y[~mask])
        return node

    @staticmethod
    def _leaf_label(n_pos: int, n: int) -> float:
        # majority label; exact ties fall to 0
        return 1.0 if 2 * n_pos > n else 0.0


class DecisionTree:
    def __init__(self, builder: _TreeBuilder, root: int):
        self.feature = np.array(builder.feature)
        self.threshold = np.array(builder.threshold)
        self.left = np.array(builder.left)
        self.right = np.array(builder.right)
        self.value = np.array(builder.value)
        self.root = root

    def predict_row(self, row: np.ndarray) -> float:
        node = self.root
        while self.feature[node] != LEAF:
            node = (
                self.left[node]
                if row[self.feature[node]] <= self.threshold[node]
                else self.right[node]
            )
        return self.value[node]

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        return np.array([self.predict_row(row) for row in X])

    def n_splits(self) -> int:
        return int((self.feature != LEAF).sum())

    def to_dict(self) -> dict:
        return {
            "feature": self.feature.tolist(),
            "threshold": self.threshold.tolist(),
            "left": self.left.tolist(),
            "right": self.right.tolist(),
            "value": self.value.tolist(),
            "root": self.root,
        }


def fit_tree(
    X,
    y,
    max_features: int,
    min_samples_leaf: int,
    min_samples_split: int,
    rng=None,
) -> DecisionTree:
    builder = _TreeBuilder(max_features, min_samples_leaf, min_samples_split, rng)
    root = builder.build(np.asarray(X, dtype=float), np.asarray(y, dtype=float))
    return DecisionTree(builder, root)


class RandomForestModel(TrainedModel):
    family = "rf"

    def __init__(self, trees: list[DecisionTree], hyperparameters: dict, d: int):
        super().__init__(hyperparameters, d)
        self.trees = trees

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        """Fraction of trees voting for the kill class."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        votes = np.zeros(len(X))
        for tree in self.trees:
            votes += tree.predict(X)
        return votes / len(self.trees)

    def params_dict(self) -> dict:
        return {"trees": [t.to_dict() for t in self.trees]}


def fit_random_forest(
    X,
    y,
    n_trees: int = 100,
    max_features: int = 5,
    min_samples_leaf: int = 8,
    min_samples_split: int = 4,
    seed: int = 0,
) -> RandomForestModel:
    X, y = check_training_data(X, y)
    n, d = X.shape
    if d < max_features:
        raise ConfigurationError(
            f"max_features={max_features} exceeds the {d} available features"
        )
    trees = []
    for t in range(n_trees):
        rng = make_generator(seed, "rf", t)
        sample = rng.integers(n, size=n)  # bootstrap
        trees.append(
            fit_tree(
                X[sample],
                y[sample],
                max_features=max_features,
                min_samples_leaf=min_samples_leaf,
                min_samples_split=min_samples_split,
                rng=rng,
            )
        )
    hp = {
        "n_trees": n_trees,
        "max_features": max_features,
        "min_samples_leaf": min_samples_leaf,
        "min_samples_split": min_samples_split,
        "seed": seed,
    }
    return RandomForestModel(trees, hp, d)
