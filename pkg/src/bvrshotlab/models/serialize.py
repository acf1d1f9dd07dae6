"""Versioned JSON serialization of trained models."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from ..errors import DataError
from .base import TrainedModel
from .bayes import GaussianNbModel
from .boosting import GradientBoostingModel, _BoostTree
from .linear import LogisticModel
from .mlp import MlpModel
from .neighbors import KnnModel
from .svm import SvmRbfModel
from .trees import DecisionTree, RandomForestModel, _TreeBuilder

FORMAT_VERSION = 1


def save_model(model: TrainedModel, path: str | Path, scaler=None) -> None:
    doc = {
        "format_version": FORMAT_VERSION,
        "family": model.family,
        "hyperparameters": model.hyperparameters,
        "feature_count": model.feature_count,
        "scaler": None
        if scaler is None
        else {"mean": scaler.mean.tolist(), "std": scaler.std.tolist()},
        "parameters": model.params_dict(),
    }
    Path(path).write_text(json.dumps(doc))


def _tree_from_dict(d: dict) -> DecisionTree:
    builder = _TreeBuilder(0, 0, 0, None)
    builder.feature = list(d["feature"])
    builder.threshold = list(d["threshold"])
    builder.left = list(d["left"])
    builder.right = list(d["right"])
    builder.value = list(d["value"])
    return DecisionTree(builder, d["root"])


def _boost_tree_from_dict(d: dict) -> _BoostTree:
    tree = _BoostTree()
    tree.feature = list(d["feature"])
    tree.threshold = list(d["threshold"])
    tree.left = list(d["left"])
    tree.right = list(d["right"])
    tree.value = list(d["value"])
    return tree


def load_model(path: str | Path):
    """Returns (model, scaler_params_or_None)."""
    doc = json.loads(Path(path).read_text())
    if doc.get("format_version") != FORMAT_VERSION:
        raise DataError(f"unsupported model format version {doc.get('format_version')}")
    family = doc["family"]
    hp = doc["hyperparameters"]
    p = doc["parameters"]
    if family == "lr":
        model = LogisticModel(np.array(p["w"]), float(p["b"]), hp)
    elif family == "knn":
        model = KnnModel(np.array(p["X_train"]), np.array(p["y_train"], dtype=int), int(p["k"]))
    elif family == "svm":
        model = SvmRbfModel(
            np.array(p["support_X"]),
            np.array(p["support_alpha_y"]),
            float(p["b"]),
            float(p["gamma"]),
            hp,
        )
    elif family == "mlp":
        model = MlpModel(
            np.array(p["W1"]),
            np.array(p["b1"]),
            np.array(p["W2"]),
            np.array(p["b2"]),
            p["activation"],
            hp,
        )
    elif family == "gnb":
        model = GaussianNbModel(
            np.array(p["means"]),
            np.array(p["variances"]),
            np.array(p["log_priors"]),
            hp,
        )
    elif family == "rf":
        model = RandomForestModel(
            [_tree_from_dict(t) for t in p["trees"]], hp, doc["feature_count"]
        )
    elif family == "gbt":
        model = GradientBoostingModel(
            [_boost_tree_from_dict(t) for t in p["trees"]],
            float(p["base_margin"]),
            float(p["learning_rate"]),
            hp,
            doc["feature_count"],
        )
    else:
        raise DataError(f"unknown family '{family}' in model file")
    scaler = None
    if doc.get("scaler") is not None:
        from ..dataset import ScalerParams

        scaler = ScalerParams(
            mean=np.array(doc["scaler"]["mean"]), std=np.array(doc["scaler"]["std"])
        )
    return model, scaler
