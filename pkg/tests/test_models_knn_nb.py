import math

import numpy as np
import pytest

from bvrshotlab.errors import SizeError
from bvrshotlab.models import fit_gaussian_nb, fit_knn

from test_models_linear import blobs


class TestKnn:
    def test_k1_memorizes(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(30, 2))
        y = (rng.random(30) < 0.4).astype(int)
        model = fit_knn(X, y, k=1)
        assert (model.predict(X) == y).all()

    def test_vote_against_brute_force(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(30, 3))
        y = (rng.random(30) < 0.5).astype(int)
        model = fit_knn(X, y, k=12)
        queries = rng.normal(size=(20, 3))
        preds = model.predict(queries)
        for q, pred in zip(queries, preds):
            d = np.sqrt(((X - q) ** 2).sum(axis=1))
            order = sorted(range(30), key=lambda j: (d[j], j))[:12]
            votes = y[order].sum()
            expected = 1 if votes * 2 > 12 else 0  # ties fall to 0
            assert pred == expected

    def test_even_tie_goes_to_zero(self):
        X = np.array([[-2.0], [-1.0], [1.0], [2.0]])
        y = np.array([0, 0, 1, 1])
        model = fit_knn(X, y, k=4)
        assert model.predict(np.array([[0.0]]))[0] == 0
        assert model.predict_score(np.array([[0.0]]))[0] == pytest.approx(0.5)

    def test_k_above_n_rejected(self):
        with pytest.raises(SizeError):
            fit_knn(np.zeros((5, 1)), np.array([0, 1, 0, 1, 0]), k=6)


class TestGaussianNb:
    def test_identical_distributions_follow_prior(self):
        rng = np.random.default_rng(2)
        X = rng.normal(size=(90, 2))
        y = np.array([0] * 60 + [1] * 30)
        model = fit_gaussian_nb(X, y)
        preds = model.predict(rng.normal(size=(50, 2)))
        assert (preds == 0).mean() > 0.9  # larger prior dominates

    def test_hand_computed_posterior(self):
        X = np.array([[0.0], [1.0], [4.0], [6.0]])
        y = np.array([0, 0, 1, 1])
        vs = 0.002
        model = fit_gaussian_nb(X, y, var_smoothing=vs)
        eps = vs * X.var()
        mu0, var0 = 0.5, 0.25 + eps
        mu1, var1 = 5.0, 1.0 + eps
        for x in (0.3, 2.0, 4.9):
            ll0 = -0.5 * (math.log(2 * math.pi * var0) + (x - mu0) ** 2 / var0) + math.log(0.5)
            ll1 = -0.5 * (math.log(2 * math.pi * var1) + (x - mu1) ** 2 / var1) + math.log(0.5)
            got = model.class_log_posterior(np.array([[x]]))[0]
            assert got[0] == pytest.approx(ll0, abs=1e-9)
            assert got[1] == pytest.approx(ll1, abs=1e-9)
            assert model.predict(np.array([[x]]))[0] == (1 if ll1 > ll0 else 0)

    def test_constant_feature_stays_finite(self):
        X = np.column_stack([np.ones(40), np.random.default_rng(3).normal(size=40)])
        y = np.array([0] * 20 + [1] * 20)
        model = fit_gaussian_nb(X, y)
        scores = model.predict_score(X)
        assert np.isfinite(scores).all()

    def test_blob_accuracy(self):
        X, y = blobs(n=200, margin=4.0, seed=4)
        model = fit_gaussian_nb(X, y)
        assert (model.predict(X) == y).mean() >= 0.95
