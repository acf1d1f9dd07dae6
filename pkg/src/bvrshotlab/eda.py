"""Exploratory data analysis: descriptive statistics, correlation,
mutual-information feature ranking, and class balance."""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dataset import COLUMN_NAMES, FEATURE_NAMES, Dataset
from .errors import DataError, SizeError

# features summarized in the descriptive-statistics table (all but the
# two categorical columns)
NUMERIC_FEATURES = tuple(n for n in FEATURE_NAMES if n != "concept")

DESCRIBE_COLUMNS = ("mean", "std", "min", "q25", "median", "q75", "max")


def describe(ds: Dataset) -> dict[str, dict[str, float]]:
    """Per-feature summary; quartiles by linear interpolation, sample std."""
    if len(ds) == 0:
        raise DataError("empty dataset")
    out = {}
    for j, name in enumerate(FEATURE_NAMES):
        if name not in NUMERIC_FEATURES:
            continue
        col = ds.X[:, j]
        out[name] = {
            "mean": float(col.mean()),
            "std": float(col.std(ddof=1)) if len(col) > 1 else 0.0,
            "min": float(col.min()),
            "q25": float(np.percentile(col, 25)),
            "median": float(np.percentile(col, 50)),
            "q75": float(np.percentile(col, 75)),
            "max": float(col.max()),
        }
    return out


def pearson_matrix(ds: Dataset) -> tuple[np.ndarray, tuple[str, ...]]:
    """Correlation over the 11 features plus the label; exactly symmetric.

    Constant columns have no defined correlation; their entries are 0
    (diagonal excepted) and a warning is issued.
    """
    data = np.column_stack([ds.X, ds.y.astype(float)])
    n, d = data.shape
    centered = data - data.mean(axis=0)
    norms = np.sqrt((centered**2).sum(axis=0))
    constant = norms == 0.0
    if constant.any():
        names = [COLUMN_NAMES[i] for i in np.flatnonzero(constant)]
        warnings.warn(f"constant column(s) {names}: correlation reported as 0")
        norms = norms.copy()
        norms[constant] = 1.0
    unit = centered / norms
    corr = unit.T @ unit
    corr = (corr + corr.T) / 2.0  # exact symmetry
    np.fill_diagonal(corr, 1.0)
    corr[constant, :] = 0.0
    corr[:, constant] = 0.0
    np.fill_diagonal(corr, 1.0)
    corr = np.clip(corr, -1.0, 1.0)
    return corr, COLUMN_NAMES


def _equal_frequency_bins(col: np.ndarray, bins: int = 10) -> np.ndarray:
    """Discretize by quantile edges; duplicate edges collapse."""
    edges = np.quantile(col, np.linspace(0.0, 1.0, bins + 1))
    edges = np.unique(edges[1:-1])
    return np.searchsorted(edges, col, side="right")


def mutual_information(col: np.ndarray, y: np.ndarray, bins: int = 10) -> float:
    """MI in nats between a discretized feature and a binary label."""
    xb = _equal_frequency_bins(col, bins)
    n = len(y)
    mi = 0.0
    for xv in np.unique(xb):
        x_mask = xb == xv
        px = x_mask.sum() / n
        for yv in (0, 1):
            pxy = (x_mask & (y == yv)).sum() / n
            if pxy == 0.0:
                continue
            py = (y == yv).sum() / n
            mi += pxy * np.log(pxy / (px * py))
    return float(max(mi, 0.0))


def mutual_info_rank(ds: Dataset, bins: int = 10) -> list[tuple[str, float]]:
    """Features ordered by MI with the kill label, descending.

    Ties break toward the schema order.
    """
    if len(ds) < 50:
        raise SizeError("need at least 50 rows for a stable MI estimate")
    scores = [
        (name, mutual_information(ds.X[:, j], ds.y, bins))
        for j, name in enumerate(FEATURE_NAMES)
    ]
    order = sorted(range(len(scores)), key=lambda i: (-scores[i][1], i))
    return [scores[i] for i in order]


@dataclass(frozen=True)
class ClassBalance:
    n_kill: int
    n_no_kill: int
    minority_fraction: float
    single_class: bool


def class_balance(ds: Dataset) -> ClassBalance:
    if len(ds) == 0:
        raise DataError("empty dataset")
    n_kill = int((ds.y == 1).sum())
    n_no_kill = len(ds) - n_kill
    single = n_kill == 0 or n_no_kill == 0
    if single:
        warnings.warn("dataset contains a single class; training must refuse it")
    return ClassBalance(
        n_kill=n_kill,
        n_no_kill=n_no_kill,
        minority_fraction=min(n_kill, n_no_kill) / len(ds),
        single_class=single,
    )


def save_describe_csv(stats: dict[str, dict[str, float]], path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("variable",) + DESCRIBE_COLUMNS)
        for name, row in stats.items():
            writer.writerow([name] + [format(row[c], ".6g") for c in DESCRIBE_COLUMNS])


def save_correlation_csv(
    corr: np.ndarray, names: tuple[str, ...], path: str | Path
) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("variable",) + tuple(names))
        for name, row in zip(names, corr):
            writer.writerow([name] + [format(v, ".6f") for v in row])


def write_eda_report(
    ds: Dataset,
    stats: dict[str, dict[str, float]],
    corr: np.ndarray,
    names: tuple[str, ...],
    mi: list[tuple[str, float]],
    path: str | Path,
) -> None:
    balance = class_balance(ds)
    concept_1 = int((ds.X[:, FEATURE_NAMES.index("concept")] == 1).sum())
    concept_2 = len(ds) - concept_1
    lines = ["# Shot dataset EDA", ""]
    lines.append(f"Rows: {len(ds)}")
    lines.append(
        f"Class balance: KILL {balance.n_kill} "
        f"({100 * balance.n_kill / len(ds):.2f}%), "
        f"NO KILL {balance.n_no_kill} "
        f"({100 * balance.n_no_kill / len(ds):.2f}%)"
    )
    lines.append(
        f"Concept split: type 1 {concept_1} ({100 * concept_1 / len(ds):.2f}%), "
        f"type 2 {concept_2} ({100 * concept_2 / len(ds):.2f}%)"
    )
    lines += ["", "## Descriptive statistics", ""]
    header = "| variable | " + " | ".join(DESCRIBE_COLUMNS) + " |"
    lines.append(header)
    lines.append("|" + "---|" * (len(DESCRIBE_COLUMNS) + 1))
    for name, row in stats.items():
        lines.append(
            f"| {name} | " + " | ".join(format(row[c], ".6g") for c in DESCRIBE_COLUMNS) + " |"
        )
    lines += ["", "## Mutual information with the kill label (nats)", ""]
    for name, score in mi:
        lines.append(f"- {name}: {score:.4f}")
    idx = {n: i for i, n in enumerate(names)}
    kill_col = corr[:, idx["kill"]]
    lines += ["", "## Correlation with the kill label", ""]
    for name in names[:-1]:
        lines.append(f"- {name}: {kill_col[idx[name]]:+.2f}")
    lines.append("")
    Path(path).write_text("\n".join(lines))
