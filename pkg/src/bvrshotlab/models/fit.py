"""Family dispatch: one fit entry point for every classifier."""

from __future__ import annotations

import numpy as np

from ..errors import ConfigurationError
from .base import TrainedModel
from .bayes import fit_gaussian_nb
from .boosting import fit_gradient_boosting
from .linear import fit_logistic
from .mlp import fit_mlp
from .neighbors import fit_knn
from .svm import fit_svm_rbf
from .trees import fit_random_forest


def fit_model(
    family: str, X: np.ndarray, y: np.ndarray, params: dict | None = None, seed: int = 0
) -> TrainedModel:
    p = dict(params or {})
    if family == "lr":
        return fit_logistic(X, y, C=p.get("C", 100.0), seed=seed)
    if family == "knn":
        return fit_knn(X, y, k=p.get("n_neighbors", 12))
    if family == "svm":
        return fit_svm_rbf(X, y, C=p.get("C", 10.0), gamma=p.get("gamma", 0.1), seed=seed)
    if family == "mlp":
        return fit_mlp(
            X,
            y,
            hidden=p.get("hidden", 100),
            lr=p.get("learning_rate_init", 0.001),
            l2=p.get("alpha", 0.001),
            activation=p.get("activation", "relu"),
            solver=p.get("solver", "adam"),
            seed=seed,
        )
    if family == "gnb":
        return fit_gaussian_nb(X, y, var_smoothing=p.get("var_smoothing", 0.002))
    if family == "rf":
        return fit_random_forest(
            X,
            y,
            n_trees=p.get("n_trees", 100),
            max_features=p.get("max_features", 5),
            min_samples_leaf=p.get("min_samples_leaf", 8),
            min_samples_split=p.get("min_samples_split", 4),
            seed=seed,
        )
    if family == "gbt":
        return fit_gradient_boosting(
            X,
            y,
            gamma=p.get("gamma", 1.5),
            subsample=p.get("subsample", 0.8),
            colsample=p.get("colsample_bytree", 0.8),
            max_depth=p.get("max_depth", 5),
            n_rounds=p.get("n_rounds", 100),
            learning_rate=p.get("learning_rate", 0.1),
            lam=p.get("lambda", 1.0),
            seed=seed,
        )
    raise ConfigurationError(f"unknown model family '{family}'")
