"""One-hidden-layer perceptron for binary classification.

Log-loss with an L2 penalty on the weight matrices (biases excluded),
scaled per batch like the reference ecosystem implementation:
loss = BCE + l2/(2*batch) * (|W1|^2 + |W2|^2). Optimized by
adaptive-moment estimation (default) or momentum SGD, with optional
early stopping on a held-out validation split.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigurationError, TrainingError
from ..rng import make_generator
from .base import TrainedModel, check_training_data

ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8
SGD_MOMENTUM = 0.9
EARLY_STOP_TOL = 1e-4
EARLY_STOP_PATIENCE = 10


def _activation(name: str):
    if name == "relu":
        return lambda z: np.maximum(z, 0.0), lambda z, a: (z > 0.0).astype(float)
    if name == "tanh":
        return np.tanh, lambda z, a: 1.0 - a**2
    if name == "logistic":
        sig = lambda z: 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))
        return sig, lambda z, a: a * (1.0 - a)
    raise ConfigurationError(f"unknown activation '{name}'")


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


class MlpModel(TrainedModel):
    family = "mlp"

    def __init__(self, W1, b1, W2, b2, activation, hyperparameters):
        super().__init__(hyperparameters, W1.shape[0])
        self.W1, self.b1, self.W2, self.b2 = W1, b1, W2, b2
        self.activation = activation

    def predict_score(self, X: np.ndarray) -> np.ndarray:
        act, _ = _activation(self.activation)
        X = np.atleast_2d(np.asarray(X, dtype=float))
        hidden = act(X @ self.W1 + self.b1)
        return _sigmoid(hidden @ self.W2 + self.b2).ravel()

    def params_dict(self) -> dict:
        return {
            "W1": self.W1.tolist(),
            "b1": self.b1.tolist(),
            "W2": self.W2.tolist(),
            "b2": self.b2.tolist(),
            "activation": self.activation,
        }


def mlp_loss_and_grads(params, X, y, l2, activation):
    """Batch objective and gradients; the finite-difference tests call this."""
    W1, b1, W2, b2 = params
    act, act_deriv = _activation(activation)
    n = len(y)
    Z1 = X @ W1 + b1
    A1 = act(Z1)
    Z2 = A1 @ W2 + b2
    p = _sigmoid(Z2).ravel()
    eps = 1e-12
    bce = -np.mean(y * np.log(p + eps) + (1 - y) * np.log(1 - p + eps))
    loss = bce + l2 / (2.0 * n) * ((W1**2).sum() + (W2**2).sum())

    delta2 = (p - y)[:, None] / n
    gW2 = A1.T @ delta2 + l2 / n * W2
    gb2 = delta2.sum(axis=0)
    delta1 = (delta2 @ W2.T) * act_deriv(Z1, A1)
    gW1 = X.T @ delta1 + l2 / n * W1
    gb1 = delta1.sum(axis=0)
    return loss, (gW1, gb1, gW2, gb2)


def fit_mlp(
    X,
    y,
    hidden: int = 100,
    lr: float = 0.001,
    l2: float = 0.001,
    seed: int = 0,
    activation: str = "relu",
    solver: str = "adam",
    batch_size: int = 200,
    max_epochs: int = 300,
    validation_fraction: float = 0.1,
) -> MlpModel:
    X, y = check_training_data(X, y)
    n, d = X.shape
    rng = make_generator(seed, "mlp")

    # uniform fan-in-scaled init
    lim1 = 1.0 / np.sqrt(d)
    lim2 = 1.0 / np.sqrt(hidden)
    W1 = rng.uniform(-lim1, lim1, (d, hidden))
    b1 = np.zeros(hidden)
    W2 = rng.uniform(-lim2, lim2, (hidden, 1))
    b2 = np.zeros(1)
    params = [W1, b1, W2, b2]

    n_val = int(round(validation_fraction * n))
    use_early_stop = n_val >= 1 and n - n_val >= 2
    if use_early_stop:
        perm = rng.permutation(n)
        val_idx, train_idx = perm[:n_val], perm[n_val:]
        X_val, y_val = X[val_idx], y[val_idx]
        X_fit, y_fit = X[train_idx], y[train_idx]
    else:
        X_fit, y_fit = X, y

    if solver == "adam":
        m = [np.zeros_like(p) for p in params]
        v = [np.zeros_like(p) for p in params]
        t = 0
    elif solver == "sgd":
        vel = [np.zeros_like(p) for p in params]
    else:
        raise ConfigurationError(f"unknown solver '{solver}'")

    best_val = np.inf
    best_params = None
    stall = 0
    n_fit = len(y_fit)
    for _ in range(max_epochs):
        order = rng.permutation(n_fit)
        for start in range(0, n_fit, batch_size):
            batch = order[start : start + batch_size]
            loss, grads = mlp_loss_and_grads(
                params, X_fit[batch], y_fit[batch], l2, activation
            )
            if not np.isfinite(loss):
                raise TrainingError("training loss diverged to a non-finite value")
            if solver == "adam":
                t += 1
                for i, g in enumerate(grads):
                    m[i] = ADAM_BETA1 * m[i] + (1 - ADAM_BETA1) * g
                    v[i] = ADAM_BETA2 * v[i] + (1 - ADAM_BETA2) * g**2
                    m_hat = m[i] / (1 - ADAM_BETA1**t)
                    v_hat = v[i] / (1 - ADAM_BETA2**t)
                    params[i] = params[i] - lr * m_hat / (np.sqrt(v_hat) + ADAM_EPS)
            else:
                for i, g in enumerate(grads):
                    vel[i] = SGD_MOMENTUM * vel[i] - lr * g
                    params[i] = params[i] + vel[i]

        if use_early_stop:
            val_loss, _ = mlp_loss_and_grads(params, X_val, y_val, l2, activation)
            if val_loss < best_val - EARLY_STOP_TOL:
                best_val = val_loss
                best_params = [p.copy() for p in params]
                stall = 0
            else:
                stall += 1
                if stall >= EARLY_STOP_PATIENCE:
                    break
    if use_early_stop and best_params is not None:
        params = best_params

    hp = {
        "hidden": hidden,
        "learning_rate_init": lr,
        "alpha": l2,
        "activation": activation,
        "solver": solver,
        "seed": seed,
    }
    return MlpModel(params[0], params[1], params[2], params[3], activation, hp)
