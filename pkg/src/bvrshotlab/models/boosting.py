"""Second-order gradient boosting on the logistic loss.

Per round: gradients g = p - y and Hessians h = p(1-p) at the current
margins; a regression tree grows greedily to max_depth on a row subsample
and feature subsample, scoring candidate splits by

    gain = 1/2 * (GL^2/(HL+lambda) + GR^2/(HR+lambda) - G^2/(H+lambda)) - gamma

and splitting only on positive gain. Leaf weight is -G/(H+lambda); margins
advance by learning_rate times the tree output. The starting margin is the
log-odds of the training prior.
"""

from __future__ import annotations

import math

import numpy as np

from ..rng import make_generator
from .base import TrainedModel, check_training_data

LEAF = -1


def split_gain(GL, HL, GR, HR, lam, gamma):
    G, H = GL + GR, HL + HR
    return 0.5 * (GL**2 / (HL + lam) + GR**2 / (HR + lam) - G**2 / (H + lam)) - gamma


def leaf_weight(G, H, lam):
    return -G / (H + lam)


class _BoostTree:
    __slots__ = ("feature", "threshold", "left", "right", "value")

    def __init__(self):
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def new_node(self) -> int:
        self.feature.append(LEAF)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def predict(self, X: np.ndarray) -> np.ndarray:
        out = np.empty(len(X))
        for i, row in enumerate(X):
            node = 0
            while self.feature[node] != LEAF:
                node = (
                    self.left[node]
                    if row[self.feature[node]] <= self.threshold[node]
                    else self.right[node]
                )
            out[i] = self.value[node]
        return out

    def n_splits(self) -> int:
        return sum(1 for f in self.feature if f != LEAF)

    def to_dict(self) -> dict:
        return {
            "feature": list(self.feature),
            "threshold": list(self.threshold),
            "left": list(self.left),
            "right": list(self.right),
            "value": list(self.value),
        }


def _grow(tree, X, g, h, rows, features, depth, max_depth, lam, gamma):
    node = tree.new_node()
    G = g[rows].sum()
    H = h[rows].sum()
    if depth < max_depth and len(rows) >= 2:
        best = None
        for f in features:
            values = X[rows, f]
            order = np.argsort(values, kind="stable")
            sv = values[order]
            sg = g[rows][order]
            sh = h[rows][order]
            cg = np.cumsum(sg)
            ch = np.cumsum(sh)
            boundaries = np.flatnonzero(sv[1:] > sv[:-1]) + 1
            for i in boundaries:
                gain = split_gain(cg[i - 1], ch[i - 1], G - cg[i - 1], H - ch[i - 1], lam, gamma)
                if gain > 0.0 and (best is None or gain > best[0] + 1e-15):
                    best = (gain, int(f), (sv[i - 1] + sv[i]) / 2.0)
        if best is not None:
            _, f, threshold = best
            mask = X[rows, f] <= threshold
            tree.feature[node] = f
            tree.threshold[node] = threshold
            tree.left[node] = _grow(
                tree, X, g, h, rows[mask], features, depth + 1, max_depth, lam, gamma
            )
            tree.right[node] = _grow(
                tree, X, g, h, rows[~mask], features, depth + 1, max_depth, lam, gamma
            )
            return node
    tree.value[node] = leaf_weight(G, H, lam)
    return node


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


class GradientBoostingModel(TrainedModel):
    family = "gbt"

    def __init__(self, trees, base_margin, learning_rate, hyperparameters, d):
        super().__init__(hyperparameters, d)
        self.trees = trees
        self.base_margin = base_margin
        self.learning_rate = learning_rate

    def decision_margin(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        margin = np.full(len(X), self.base_margin)
        for tree in self.trees:
            margin += self.learning_rate * tree.predict(X)
        return margin

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        return _sigmoid(self.decision_margin(X))

    def total_splits(self) -> int:
        return sum(t.n_splits() for t in self.trees)

    def params_dict(self) -> dict:
        return {
            "trees": [t.to_dict() for t in self.trees],
            "base_margin": self.base_margin,
            "learning_rate": self.learning_rate,
        }


def fit_gradient_boosting(
    X,
    y,
    gamma: float = 1.5,
    subsample: float = 0.8,
    colsample: float = 0.8,
    max_depth: int = 5,
    n_rounds: int = 100,
    learning_rate: float = 0.1,
    lam: float = 1.0,
    seed: int = 0,
) -> GradientBoostingModel:
    X, y = check_training_data(X, y)
    n, d = X.shape
    prior = y.mean()
    base_margin = math.log(prior / (1.0 - prior))
    margins = np.full(n, base_margin)
    trees = []
    n_rows = max(1, int(round(subsample * n)))
    n_cols = max(1, int(round(colsample * d)))
    for t in range(n_rounds):
        rng = make_generator(seed, "gbt", t)
        p = _sigmoid(margins)
        g = p - y
        h = p * (1.0 - p)
        rows = np.sort(rng.choice(n, size=n_rows, replace=False))
        features = np.sort(rng.choice(d, size=n_cols, replace=False))
        tree = _BoostTree()
        _grow(tree, X, g, h, rows, features, 0, max_depth, lam, gamma)
        trees.append(tree)
        margins += learning_rate * tree.predict(X)
    hp = {
        "gamma": gamma,
        "subsample": subsample,
        "colsample_bytree": colsample,
        "max_depth": max_depth,
        "n_rounds": n_rounds,
        "learning_rate": learning_rate,
        "lambda": lam,
        "seed": seed,
    }
    return GradientBoostingModel(trees, base_margin, learning_rate, hp, d)
