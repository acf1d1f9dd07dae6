"""Grid search scored by mean F1 over stratification-free k-fold CV.

For every grid point and fold: the training portion alone is resampled
(strategy "none" included), the model fit, and F1 computed on the
untouched validation fold. Scaled families are standardized with a scaler
fitted on the fold's training portion. Ties in mean F1 go to the earlier
point in row-major grid order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from ..dataset import apply_scaler, fit_scaler, kfold_indices
from ..errors import ConfigurationError
from ..resample import apply_strategy
from ..rng import derive_seed
from .base import SCALED_FAMILIES
from .fit import fit_model


def f1_score(y_true: np.ndarray, y_pred: np.ndarray) -> float:
    """F1 with the zero-division-to-zero convention."""
    tp = int(((y_true == 1) & (y_pred == 1)).sum())
    fp = int(((y_true == 0) & (y_pred == 1)).sum())
    fn = int(((y_true == 1) & (y_pred == 0)).sum())
    if tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2.0 * precision * recall / (precision + recall)


def grid_points(grid: dict[str, list]) -> list[dict]:
    """Row-major expansion of per-hyperparameter candidate lists."""
    names = list(grid.keys())
    return [
        dict(zip(names, combo))
        for combo in itertools.product(*(grid[n] for n in names))
    ]


@dataclass
class GridSearchResult:
    family: str
    best_params: dict
    best_score: float
    points: list[dict]
    mean_scores: list[float]


def fold_f1(family, params, X_train, y_train, X_val, y_val, resampler, seed) -> float:
    """One fold's F1 for one grid point; shared with the audit oracles."""
    if family in SCALED_FAMILIES:
        scaler = fit_scaler(X_train)
        X_train = apply_scaler(scaler, X_train)
        X_val = apply_scaler(scaler, X_val)
    out = apply_strategy(resampler, X_train, y_train, seed=derive_seed(seed, "resample"))
    model = fit_model(family, out.X, out.y, params, seed=derive_seed(seed, "fit"))
    return f1_score(y_val, model.predict(X_val))


def grid_search_cv(
    family: str,
    grid: dict[str, list],
    X: np.ndarray,
    y: np.ndarray,
    k: int = 5,
    resampler: str = "none",
    seed: int = 0,
) -> GridSearchResult:
    if not grid or any(len(v) == 0 for v in grid.values()):
        raise ConfigurationError("empty hyperparameter grid")
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    folds = kfold_indices(len(y), k=k, seed=derive_seed(seed, "cv-folds"))
    all_idx = np.arange(len(y))
    points = grid_points(grid)
    mean_scores = []
    for point in points:
        scores = []
        for fold_id, val_idx in enumerate(folds):
            train_idx = np.setdiff1d(all_idx, val_idx)
            scores.append(
                fold_f1(
                    family,
                    point,
                    X[train_idx],
                    y[train_idx],
                    X[val_idx],
                    y[val_idx],
                    resampler,
                    seed=derive_seed(seed, "fold", fold_id),
                )
            )
        mean_scores.append(float(np.mean(scores)))
    best_i = int(np.argmax(mean_scores))  # argmax keeps the first on ties
    return GridSearchResult(
        family=family,
        best_params=points[best_i],
        best_score=mean_scores[best_i],
        points=points,
        mean_scores=mean_scores,
    )
