"""Shot records: the 11-feature + label schema, splits, and standardization.

Each record captures the launch conditions of one blue missile shot plus
whether it killed. Range-like features are stored in meters (the summary
statistics of the source data are meter-scaled), speeds differences in
knots, angles in degrees with the heading difference normalized to
[0, 360).
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass, fields
from pathlib import Path

import numpy as np

from .doe import SimCase
from .errors import DataError, SequencingError, SizeError
from .rng import make_generator

KT_PER_MS = 1.943844

FEATURE_NAMES = (
    "radar_track_range",
    "distance",
    "missile_act_dist",
    "delta_altitude",
    "delta_speed",
    "missile_range",
    "rcs",
    "firerange",
    "angle_uni_to_tgt",
    "delta_heading",
    "concept",
)
LABEL_NAME = "kill"
COLUMN_NAMES = FEATURE_NAMES + (LABEL_NAME,)


@dataclass(frozen=True)
class ShotRecord:
    radar_track_range: float  # m
    distance: float  # m
    missile_act_dist: float  # m
    delta_altitude: float  # m, shooter minus target
    delta_speed: float  # kt, shooter minus target
    missile_range: float  # WEZ multiplicative factor
    rcs: float  # additive dBm2 offset
    firerange: float  # % of WEZ
    angle_uni_to_tgt: float  # deg, signed off-boresight
    delta_heading: float  # deg in [0, 360)
    concept: int  # 1 | 2
    kill: int  # 0 | 1

    def feature_vector(self) -> np.ndarray:
        return np.array([getattr(self, name) for name in FEATURE_NAMES], dtype=float)


class Dataset:
    """Immutable table of shot records in fixed column order."""

    def __init__(self, records: list[ShotRecord]):
        self.records = tuple(records)
        self._X = np.array([r.feature_vector() for r in records], dtype=float)
        self._y = np.array([r.kill for r in records], dtype=int)
        self._X.setflags(write=False)
        self._y.setflags(write=False)

    def __len__(self) -> int:
        return len(self.records)

    @property
    def X(self) -> np.ndarray:
        return self._X

    @property
    def y(self) -> np.ndarray:
        return self._y

    def subset(self, indices) -> "Dataset":
        return Dataset([self.records[i] for i in np.asarray(indices, dtype=int)])


def extract_record(event, case: SimCase) -> ShotRecord:
    """Build one record from a resolved blue shot event.

    `event` may be a ShotEvent or a dict of shots.csv strings.
    """
    if isinstance(event, dict):
        get = lambda k: event[k]
        outcome = event["outcome"]
        side = event["shooter_side"]
    else:
        get = lambda k: getattr(event, k)
        outcome = event.outcome
        side = event.shooter_side
    if outcome not in ("KILL", "NO_KILL"):
        raise SequencingError("shot outcome not resolved yet")
    if side != "blue":
        raise DataError("only blue launches enter the learning dataset")

    shooter_alt = float(get("shooter_alt_m"))
    target_alt = float(get("target_alt_m"))
    shooter_speed = float(get("shooter_speed_ms"))
    target_speed = float(get("target_speed_ms"))
    return ShotRecord(
        radar_track_range=case.blue_track_range_m,
        distance=float(get("distance_m")),
        missile_act_dist=case.blue_missile_act_dist_m,
        delta_altitude=shooter_alt - target_alt,
        delta_speed=(shooter_speed - target_speed) * KT_PER_MS,
        missile_range=case.blue_missile_range_factor,
        rcs=case.blue_rcs_delta_db,
        firerange=case.blue_shot_philosophy_pct,
        angle_uni_to_tgt=float(get("off_boresight_deg")),
        delta_heading=float(get("delta_heading_deg")) % 360.0,
        concept=case.blue_concept,
        kill=1 if outcome == "KILL" else 0,
    )


def save_dataset(ds: Dataset, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(COLUMN_NAMES)
        for r in ds.records:
            # repr of a Python float round-trips exactly and is deterministic
            writer.writerow(
                [repr(float(getattr(r, n))) for n in FEATURE_NAMES] + [r.kill]
            )


def load_dataset(path: str | Path) -> Dataset:
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != COLUMN_NAMES:
            raise DataError(f"unexpected dataset header in {path}")
        for row in reader:
            records.append(
                ShotRecord(
                    **{n: float(row[n]) for n in FEATURE_NAMES if n != "concept"},
                    concept=int(float(row["concept"])),
                    kill=int(float(row["kill"])),
                )
            )
    return Dataset(records)


def train_test_split(ds: Dataset, test_fraction: float = 0.15, seed: int = 0):
    """Uniform random partition; test gets ceil(test_fraction * n) rows."""
    n = len(ds)
    if n < 20:
        raise SizeError(f"need at least 20 rows to split, have {n}")
    n_test = math.ceil(test_fraction * n)
    perm = make_generator(seed, "split").permutation(n)
    test_idx = np.sort(perm[:n_test])
    train_idx = np.sort(perm[n_test:])
    return ds.subset(train_idx), ds.subset(test_idx)


def kfold_indices(n: int, k: int = 5, seed: int = 0) -> list[np.ndarray]:
    """k disjoint validation folds covering [0, n), sizes differing by <= 1."""
    if n < k:
        raise SizeError(f"cannot make {k} folds from {n} rows")
    perm = make_generator(seed, "folds").permutation(n)
    base, extra = divmod(n, k)
    folds = []
    start = 0
    for i in range(k):
        size = base + (1 if i < extra else 0)
        folds.append(np.sort(perm[start : start + size]))
        start += size
    return folds


@dataclass(frozen=True)
class ScalerParams:
    mean: np.ndarray
    std: np.ndarray  # population convention, zero-variance columns forced to 1


def fit_scaler(X: np.ndarray) -> ScalerParams:
    X = np.asarray(X, dtype=float)
    mean = X.mean(axis=0)
    std = X.std(axis=0)  # divide-by-n
    zero = std == 0.0
    if zero.any():
        warnings.warn(
            f"constant feature column(s) {np.flatnonzero(zero).tolist()}: "
            "std forced to 1, they carry no information"
        )
        std = std.copy()
        std[zero] = 1.0
    return ScalerParams(mean=mean, std=std)


def apply_scaler(params: ScalerParams, X: np.ndarray) -> np.ndarray:
    return (np.asarray(X, dtype=float) - params.mean) / params.std


def invert_scaler(params: ScalerParams, Xs: np.ndarray) -> np.ndarray:
    return np.asarray(Xs, dtype=float) * params.std + params.mean
