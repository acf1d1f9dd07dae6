"""Logistic regression by full-batch gradient descent with backtracking.

Objective: mean log-loss plus an L2 penalty on the weights (bias excluded)
of strength 1/(2*C*n). The descent uses an Armijo backtracking line search
and stops when the gradient infinity-norm falls below 1e-6.
"""

from __future__ import annotations

import numpy as np

from .base import TrainedModel, check_training_data

GRAD_TOL = 1e-6
MAX_ITER = 5000
ARMIJO_C = 1e-4


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _log_loss(p: np.ndarray, y: np.ndarray) -> float:
    eps = 1e-12
    return float(-np.mean(y * np.log(p + eps) + (1 - y) * np.log(1 - p + eps)))


class LogisticModel(TrainedModel):
    family = "lr"

    def __init__(self, w: np.ndarray, b: float, hyperparameters: dict):
        super().__init__(hyperparameters, len(w))
        self.w = w
        self.b = b

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        return _sigmoid(np.asarray(X, dtype=float) @ self.w + self.b)

    def params_dict(self) -> dict:
        return {"w": self.w.tolist(), "b": self.b}


def logistic_objective(w, b, X, y, C):
    n = len(y)
    p = _sigmoid(X @ w + b)
    return _log_loss(p, y) + (w @ w) / (2.0 * C * n)


def logistic_gradient(w, b, X, y, C):
    n = len(y)
    residual = _sigmoid(X @ w + b) - y
    grad_w = X.T @ residual / n + w / (C * n)
    grad_b = residual.mean()
    return grad_w, grad_b


def fit_logistic(X, y, C: float = 100.0, seed: int = 0) -> LogisticModel:
    X, y = check_training_data(X, y)
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    step = 1.0
    loss = logistic_objective(w, b, X, y, C)
    for _ in range(MAX_ITER):
        grad_w, grad_b = logistic_gradient(w, b, X, y, C)
        gnorm = max(np.abs(grad_w).max(), abs(grad_b))
        if gnorm < GRAD_TOL:
            break
        slope = -(grad_w @ grad_w + grad_b * grad_b)
        step = min(step * 2.0, 1e6)
        while True:
            w_new = w - step * grad_w
            b_new = b - step * grad_b
            loss_new = logistic_objective(w_new, b_new, X, y, C)
            if loss_new <= loss + ARMIJO_C * step * slope or step < 1e-16:
                break
            step *= 0.5
        w, b, loss = w_new, b_new, loss_new
    return LogisticModel(w, b, {"C": C, "seed": seed})
