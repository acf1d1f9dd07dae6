import numpy as np
import pytest

from bvrshotlab.models import fit_mlp, mlp_loss_and_grads
from bvrshotlab.models.mlp import MlpModel

from test_models_linear import blobs


def test_gradients_match_central_differences():
    rng = np.random.default_rng(0)
    X = rng.normal(size=(6, 3))
    y = np.array([0, 1, 1, 0, 1, 0])
    W1 = rng.normal(size=(3, 4)) * 0.5
    b1 = rng.normal(size=4) * 0.1
    W2 = rng.normal(size=(4, 1)) * 0.5
    b2 = rng.normal(size=1) * 0.1
    l2 = 0.001
    for activation in ("relu", "tanh", "logistic"):
        params = [W1.copy(), b1.copy(), W2.copy(), b2.copy()]
        _, grads = mlp_loss_and_grads(params, X, y, l2, activation)
        h = 1e-5
        for p_idx in range(4):
            flat = params[p_idx].ravel()
            grad_flat = grads[p_idx].ravel()
            for j in range(flat.size):
                orig = flat[j]
                flat[j] = orig + h
                up, _ = mlp_loss_and_grads(params, X, y, l2, activation)
                flat[j] = orig - h
                down, _ = mlp_loss_and_grads(params, X, y, l2, activation)
                flat[j] = orig
                fd = (up - down) / (2 * h)
                if abs(fd) < 1e-10 and abs(grad_flat[j]) < 1e-10:
                    continue
                rel = abs(grad_flat[j] - fd) / max(abs(fd), abs(grad_flat[j]), 1e-8)
                assert rel < 1e-4, (activation, p_idx, j)


def test_zero_weight_network_outputs_half():
    model = MlpModel(
        np.zeros((3, 5)), np.zeros(5), np.zeros((5, 1)), np.zeros(1), "relu", {}
    )
    X = np.random.default_rng(1).normal(size=(10, 3))
    assert np.allclose(model.predict_score(X), 0.5)


def test_xor_learnable_most_seeds():
    X = np.array([[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]])
    y = np.array([0, 1, 1, 0])
    wins = 0
    for seed in range(10):
        model = fit_mlp(
            X,
            y,
            hidden=8,
            lr=0.05,
            l2=0.0,
            seed=seed,
            max_epochs=2000,
            batch_size=4,
            validation_fraction=0.0,
        )
        if (model.predict(X) == y).all():
            wins += 1
    assert wins >= 8


def test_blob_accuracy():
    X, y = blobs(n=200, margin=4.0, seed=6)
    model = fit_mlp(X, y, hidden=20, seed=0, max_epochs=200)
    assert (model.predict(X) == y).mean() >= 0.95


def test_sgd_solver_works():
    X, y = blobs(n=120, margin=5.0, seed=8)
    model = fit_mlp(X, y, hidden=16, lr=0.01, solver="sgd", seed=1, max_epochs=200)
    assert (model.predict(X) == y).mean() >= 0.95


def test_determinism():
    X, y = blobs(n=60, margin=3.0, seed=2)
    a = fit_mlp(X, y, hidden=10, seed=5, max_epochs=30)
    b = fit_mlp(X, y, hidden=10, seed=5, max_epochs=30)
    assert np.array_equal(a.W1, b.W1)
    assert np.array_equal(a.W2, b.W2)
