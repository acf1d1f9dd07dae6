"""Gaussian naive Bayes with variance smoothing."""

from __future__ import annotations

import math

import numpy as np

from .base import TrainedModel, check_training_data


class GaussianNbModel(TrainedModel):
    family = "gnb"

    def __init__(self, means, variances, log_priors, hyperparameters):
        super().__init__(hyperparameters, means.shape[1])
        self.means = means  # class x feature
        self.variances = variances
        self.log_priors = log_priors

    def class_log_posterior(self, X: np.ndarray) -> np.ndarray:
        """Unnormalized log posterior per class (n x 2)."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        out = np.empty((len(X), 2))
        for c in (0, 1):
            mu = self.means[c]
            var = self.variances[c]
            ll = -0.5 * (np.log(2.0 * math.pi * var) + (X - mu) ** 2 / var).sum(axis=1)
            out[:, c] = ll + self.log_priors[c]
        return out

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        lp = self.class_log_posterior(X)
        # stable posterior probability of class 1
        m = lp.max(axis=1, keepdims=True)
        expd = np.exp(lp - m)
        return expd[:, 1] / expd.sum(axis=1)

    def params_dict(self) -> dict:
        return {
            "means": self.means.tolist(),
            "variances": self.variances.tolist(),
            "log_priors": self.log_priors.tolist(),
        }


def fit_gaussian_nb(X, y, var_smoothing: float = 0.002) -> GaussianNbModel:
    X, y = check_training_data(X, y)
    # smoothing floor scales with the widest feature variance overall
    epsilon = var_smoothing * X.var(axis=0).max()
    means = np.empty((2, X.shape[1]))
    variances = np.empty((2, X.shape[1]))
    log_priors = np.empty(2)
    for c in (0, 1):
        rows = X[y == c]
        means[c] = rows.mean(axis=0)
        variances[c] = rows.var(axis=0) + epsilon
        log_priors[c] = math.log(len(rows) / len(y))
    return GaussianNbModel(means, variances, log_priors, {"var_smoothing": var_smoothing})
