"""Canonical hyperparameter grids and the selected best settings."""

from __future__ import annotations

import numpy as np

from ..errors import ConfigurationError

# tuned operating point per family
BEST_HYPERPARAMETERS: dict[str, dict] = {
    "lr": {"C": 100.0},
    "knn": {"n_neighbors": 12},
    "svm": {"C": 10.0, "gamma": 0.1},
    "mlp": {
        "learning_rate_init": 0.001,
        "activation": "relu",
        "solver": "adam",
        "alpha": 0.001,
    },
    "gnb": {"var_smoothing": 0.002},
    "rf": {"max_features": 5, "min_samples_leaf": 8, "min_samples_split": 4},
    "gbt": {"gamma": 1.5, "subsample": 0.8, "colsample_bytree": 0.8, "max_depth": 5},
}

# full search grids, in declaration order (row-major tie-breaking)
FULL_GRIDS: dict[str, dict[str, list]] = {
    "lr": {"C": [10.0**e for e in range(-3, 4)]},
    "knn": {"n_neighbors": list(range(1, 51))},
    "svm": {
        "C": [0.1, 1.0, 10.0, 100.0, 1000.0],
        "gamma": [1.0, 0.1, 0.01, 0.001, 0.0001],
    },
    "mlp": {
        "learning_rate_init": [0.001, 0.01, 0.1],
        "activation": ["logistic", "tanh", "relu"],
        "solver": ["sgd", "adam"],
        "alpha": [0.0001, 0.001],
    },
    "gnb": {"var_smoothing": np.logspace(0, -9, num=100).tolist()},
    "rf": {
        "max_features": [2, 3, 4, 5, 6, 7, 8, 9, 10],
        "min_samples_leaf": [3, 5, 8],
        "min_samples_split": [4, 8, 12],
    },
    "gbt": {
        "gamma": [0.5, 1.0, 1.5],
        "subsample": [0.6, 0.8],
        "colsample_bytree": [0.6, 0.8, 1.0],
        "max_depth": [3, 4, 5],
    },
}

# small grids around the chosen operating points for desk-scale sweeps
REDUCED_GRIDS: dict[str, dict[str, list]] = {
    "lr": {"C": [1.0, 100.0]},
    "knn": {"n_neighbors": [5, 12]},
    "svm": {"C": [1.0, 10.0], "gamma": [0.1, 0.01]},
    "mlp": {
        "learning_rate_init": [0.001, 0.01],
        "activation": ["relu"],
        "solver": ["adam"],
        "alpha": [0.001],
    },
    "gnb": {"var_smoothing": [0.002, 1e-9]},
    "rf": {"max_features": [3, 5], "min_samples_leaf": [8], "min_samples_split": [4]},
    "gbt": {
        "gamma": [1.5],
        "subsample": [0.8],
        "colsample_bytree": [0.8],
        "max_depth": [3, 5],
    },
}


def grid_for(family: str, mode: str) -> dict[str, list]:
    if mode == "full":
        table = FULL_GRIDS
    elif mode == "reduced":
        table = REDUCED_GRIDS
    else:
        raise ConfigurationError(f"unknown grid mode '{mode}'")
    if family not in table:
        raise ConfigurationError(f"unknown model family '{family}'")
    return table[family]
