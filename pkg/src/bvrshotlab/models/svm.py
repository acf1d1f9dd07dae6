"""Soft-margin RBF support vector machine trained by sequential minimal
optimization.

Labels map to {-1, +1} internally. Pair selection follows the classic
two-loop heuristic: an outer sweep over KKT violators (alternating full
passes and non-bound passes) and an inner choice maximizing |E_i - E_j|,
falling back to seeded random non-bound then random indices. Training
ends when a full pass finds no violator beyond the tolerance.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConvergenceError
from ..rng import make_generator
from .base import TrainedModel, check_training_data

KKT_TOL = 1e-3
MAX_PAIR_UPDATES = 1_000_000


def rbf_kernel_matrix(A: np.ndarray, B: np.ndarray, gamma: float) -> np.ndarray:
    a2 = (A**2).sum(axis=1)[:, None]
    b2 = (B**2).sum(axis=1)[None, :]
    d2 = np.maximum(a2 + b2 - 2.0 * (A @ B.T), 0.0)
    return np.exp(-gamma * d2)


class SvmRbfModel(TrainedModel):
    family = "svm"
    margin_based = True
    threshold = 0.0

    def __init__(self, support_X, support_alpha_y, b, gamma, hyperparameters):
        super().__init__(hyperparameters, support_X.shape[1])
        self.support_X = support_X
        self.support_alpha_y = support_alpha_y  # alpha_i * y_i per support vector
        self.b = b
        self.gamma = gamma

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        K = rbf_kernel_matrix(X, self.support_X, self.gamma)
        return K @ self.support_alpha_y + self.b

    def params_dict(self) -> dict:
        return {
            "support_X": self.support_X.tolist(),
            "support_alpha_y": self.support_alpha_y.tolist(),
            "b": self.b,
            "gamma": self.gamma,
        }


def fit_svm_rbf(X, y01, C: float = 10.0, gamma: float = 0.1, seed: int = 0) -> SvmRbfModel:
    X, y01 = check_training_data(X, y01)
    y = np.where(y01 == 1, 1.0, -1.0)
    n = len(y)
    K = rbf_kernel_matrix(X, X, gamma)
    alpha = np.zeros(n)
    b = 0.0
    # E_i = f(x_i) - y_i, maintained incrementally
    errors = -y.copy()
    rng = make_generator(seed, "svm")
    updates = 0

    def take_step(i, j) -> bool:
        nonlocal b, updates, errors
        if i == j:
            return False
        ai_old, aj_old = alpha[i], alpha[j]
        yi, yj = y[i], y[j]
        Ei, Ej = errors[i], errors[j]
        if yi != yj:
            lo = max(0.0, aj_old - ai_old)
            hi = min(C, C + aj_old - ai_old)
        else:
            lo = max(0.0, ai_old + aj_old - C)
            hi = min(C, ai_old + aj_old)
        if lo >= hi:
            return False
        eta = K[i, i] + K[j, j] - 2.0 * K[i, j]
        if eta <= 0.0:
            return False  # duplicate points under the RBF kernel
        aj = aj_old + yj * (Ei - Ej) / eta
        aj = min(max(aj, lo), hi)
        if abs(aj - aj_old) < 1e-12 * (aj + aj_old + 1e-12):
            return False
        ai = ai_old + yi * yj * (aj_old - aj)
        b1 = b - Ei - yi * (ai - ai_old) * K[i, i] - yj * (aj - aj_old) * K[i, j]
        b2 = b - Ej - yi * (ai - ai_old) * K[i, j] - yj * (aj - aj_old) * K[j, j]
        if 0.0 < ai < C:
            b_new = b1
        elif 0.0 < aj < C:
            b_new = b2
        else:
            b_new = (b1 + b2) / 2.0
        errors_delta = (
            yi * (ai - ai_old) * K[i] + yj * (aj - aj_old) * K[j] + (b_new - b)
        )
        alpha[i], alpha[j] = ai, aj
        errors += errors_delta
        b = b_new
        updates += 1
        return True

    def violates(i) -> bool:
        r = errors[i] * y[i]
        return (r < -KKT_TOL and alpha[i] < C) or (r > KKT_TOL and alpha[i] > 0.0)

    def examine(i) -> bool:
        if not violates(i):
            return False
        non_bound = np.flatnonzero((alpha > 0.0) & (alpha < C))
        if len(non_bound) > 1:
            j = non_bound[np.argmax(np.abs(errors[i] - errors[non_bound]))]
            if take_step(i, int(j)):
                return True
        if len(non_bound):
            for j in rng.permutation(non_bound):
                if take_step(i, int(j)):
                    return True
        for j in rng.permutation(n):
            if take_step(i, int(j)):
                return True
        return False

    examine_all = True
    while True:
        changed = 0
        indices = range(n) if examine_all else np.flatnonzero((alpha > 0) & (alpha < C))
        for i in indices:
            changed += examine(int(i))
            if updates > MAX_PAIR_UPDATES:
                viol = [i for i in range(n) if violates(i)]
                raise ConvergenceError(
                    f"SMO exceeded {MAX_PAIR_UPDATES} pair updates; "
                    f"{len(viol)} KKT violators remain, "
                    f"worst residual {max(abs(errors[i] * y[i]) for i in viol):.3e}"
                )
        if examine_all:
            if changed == 0:
                break
            examine_all = False
        elif changed == 0:
            examine_all = True

    support = alpha > 1e-12
    return SvmRbfModel(
        X[support],
        (alpha * y)[support],
        b,
        gamma,
        {"C": C, "gamma": gamma, "seed": seed},
    )


def kkt_violations(model: SvmRbfModel, X, y01, C: float) -> np.ndarray:
    """Per-point KKT residuals for auditing a fitted model.

    0 where the condition holds; positive values measure the violation.
    """
    X = np.asarray(X, dtype=float)
    y = np.where(np.asarray(y01) == 1, 1.0, -1.0)
    f = model.predict_score(X)
    margins = y * f
    # recover alpha per training point (0 for non-support rows)
    alpha = np.zeros(len(y))
    sv_index = {tuple(row): i for i, row in enumerate(model.support_X)}
    for i, row in enumerate(X):
        j = sv_index.get(tuple(row))
        if j is not None:
            alpha[i] = abs(model.support_alpha_y[j])
    viol = np.zeros(len(y))
    at_zero = alpha <= 1e-9
    at_c = alpha >= C - 1e-9
    free = ~(at_zero | at_c)
    viol[at_zero] = np.maximum(0.0, 1.0 - margins[at_zero])
    viol[at_c] = np.maximum(0.0, margins[at_c] - 1.0)
    viol[free] = np.abs(margins[free] - 1.0)
    return viol
