"""Imbalanced-learning resamplers over a shared exact nearest-neighbor scan.

All strategies are pure functions of (X, y, parameters, seed) and follow
the classic definitions: SMOTE interpolates between minority neighbors,
ADASYN allocates synthesis toward borderline minority points, Tomek-link
cleaning drops the majority member of cross-class mutual nearest-neighbor
pairs, and the edited-nearest-neighbor rule drops points whose neighbors
outvote their label. Retained original rows are always value-identical to
the input.

RNG protocol (mirrored by the test oracles): for each synthetic row, one
integer draw in [0, k) choosing the neighbor, then one uniform in [0, 1)
for the interpolation parameter, from a single Philox generator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SizeError, StrategyError
from .rng import make_generator

STRATEGY_NAMES = (
    "none",
    "smote",
    "adasyn",
    "tomek",
    "enn",
    "smote-tomek",
    "smote-enn",
)


@dataclass
class ResampleOutcome:
    X: np.ndarray
    y: np.ndarray
    # indices into the output arrays of generated rows
    synthetic_rows: list[int] = field(default_factory=list)
    # indices into the ORIGINAL arrays of removed rows
    removed_rows: list[int] = field(default_factory=list)


def knn_query(
    X: np.ndarray, query, k: int, exclude_self: bool = False
) -> np.ndarray:
    """Indices of the k exact Euclidean nearest neighbors.

    `query` is either a row vector or an integer index into X; only an
    index query can exclude itself (with duplicate points, excluding by
    value would be ambiguous). Ties break toward the lower index.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    limit = n - 1 if exclude_self else n
    if k > limit:
        raise SizeError(f"k={k} exceeds the {limit} available neighbors")
    if isinstance(query, (int, np.integer)):
        q = X[int(query)]
        self_index = int(query)
    else:
        if exclude_self:
            raise ValueError("exclude_self requires an index query")
        q = np.asarray(query, dtype=float)
        self_index = -1
    d2 = ((X - q) ** 2).sum(axis=1)
    if self_index >= 0:
        d2 = d2.copy()
        d2[self_index] = np.inf
    order = np.lexsort((np.arange(n), d2))  # distance, then index
    return order[:k]


def _neighbor_table(X: np.ndarray, rows: np.ndarray, pool: np.ndarray, k: int):
    """k nearest pool members for each row index, self excluded."""
    table = {}
    pool_set = X[pool]
    for i in rows:
        d2 = ((pool_set - X[i]) ** 2).sum(axis=1)
        own = np.flatnonzero(pool == i)
        if own.size:
            d2 = d2.copy()
            d2[own[0]] = np.inf
        order = np.lexsort((np.arange(len(pool)), d2))
        table[i] = pool[order[:k]]
    return table


def _class_split(y: np.ndarray):
    """(minority_label, majority_label); the tie goes to 1 as minority."""
    n1 = int((y == 1).sum())
    n0 = len(y) - n1
    if n0 == 0 or n1 == 0:
        raise StrategyError("both classes must be present")
    return (1, 0) if n1 <= n0 else (0, 1)


def smote(X: np.ndarray, y: np.ndarray, k: int = 5, seed: int = 0) -> ResampleOutcome:
    """Oversample the minority to exact balance.

    Base rows cycle round-robin over the minority; each synthetic row is
    base + u * (neighbor - base) with the neighbor uniform among the
    base's k nearest minority neighbors and u ~ U[0, 1).
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    minority, majority = _class_split(y)
    min_idx = np.flatnonzero(y == minority)
    maj_idx = np.flatnonzero(y == majority)
    gap = len(maj_idx) - len(min_idx)
    if gap == 0:
        return ResampleOutcome(X.copy(), y.copy())
    if len(min_idx) < k + 1:
        raise StrategyError(
            f"SMOTE needs at least k+1={k + 1} minority rows, have {len(min_idx)}"
        )
    neighbors = _neighbor_table(X, min_idx, min_idx, k)
    rng = make_generator(seed, "smote")
    synth = np.empty((gap, X.shape[1]))
    for g in range(gap):
        base = min_idx[g % len(min_idx)]
        nn = neighbors[base][int(rng.integers(k))]
        u = rng.random()
        synth[g] = X[base] + u * (X[nn] - X[base])
    X_out = np.vstack([X, synth])
    y_out = np.concatenate([y, np.full(gap, minority, dtype=int)])
    return ResampleOutcome(X_out, y_out, synthetic_rows=list(range(len(y), len(y_out))))


def adasyn(X: np.ndarray, y: np.ndarray, k: int = 5, seed: int = 0) -> ResampleOutcome:
    """Oversample with per-point budgets proportional to majority crowding.

    r_i = fraction of majority points among the k nearest neighbors (over
    all points) of minority row i; budgets g_i = round(r_i / sum(r) * G).
    Synthesis then follows the SMOTE interpolation rule against minority
    neighbors.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    minority, majority = _class_split(y)
    min_idx = np.flatnonzero(y == minority)
    maj_idx = np.flatnonzero(y == majority)
    gap = len(maj_idx) - len(min_idx)
    if gap == 0:
        return ResampleOutcome(X.copy(), y.copy())
    if len(min_idx) < k + 1:
        raise StrategyError(
            f"ADASYN needs at least k+1={k + 1} minority rows, have {len(min_idx)}"
        )
    all_neighbors = _neighbor_table(X, min_idx, np.arange(len(y)), k)
    r = np.array(
        [(y[all_neighbors[i]] == majority).sum() / k for i in min_idx], dtype=float
    )
    total = r.sum()
    if total == 0.0:
        raise StrategyError(
            "ADASYN found no borderline minority rows (every neighborhood is pure)"
        )
    budgets = np.rint(r / total * gap).astype(int)
    min_neighbors = _neighbor_table(X, min_idx, min_idx, k)
    rng = make_generator(seed, "adasyn")
    rows = []
    for i, budget in zip(min_idx, budgets):
        for _ in range(budget):
            nn = min_neighbors[i][int(rng.integers(k))]
            u = rng.random()
            rows.append(X[i] + u * (X[nn] - X[i]))
    if rows:
        X_out = np.vstack([X, np.array(rows)])
        y_out = np.concatenate([y, np.full(len(rows), minority, dtype=int)])
    else:
        X_out, y_out = X.copy(), y.copy()
    return ResampleOutcome(
        X_out, y_out, synthetic_rows=list(range(len(y), len(y_out)))
    )


def tomek_links(X: np.ndarray, y: np.ndarray) -> list[tuple[int, int]]:
    """Cross-class pairs that are mutual exact 1-NN of each other."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    n = len(y)
    nn = np.array([knn_query(X, i, 1, exclude_self=True)[0] for i in range(n)])
    links = []
    for i in range(n):
        j = nn[i]
        if j > i and nn[j] == i and y[i] != y[j]:
            links.append((i, int(j)))
    return links


def _majority_label(y: np.ndarray) -> int:
    # ties go to label 0, the no-kill class in this problem
    return 0 if (y == 0).sum() >= (y == 1).sum() else 1


def tomek_clean(X: np.ndarray, y: np.ndarray) -> ResampleOutcome:
    """Single-pass removal of the majority member of every link."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    majority = _majority_label(y)
    remove = sorted(
        {a if y[a] == majority else b for a, b in tomek_links(X, y) if y[a] != y[b]}
    )
    keep = np.setdiff1d(np.arange(len(y)), remove)
    return ResampleOutcome(X[keep], y[keep], removed_rows=list(remove))


def enn_edit(X: np.ndarray, y: np.ndarray, k: int = 3, edit_both: bool = False) -> ResampleOutcome:
    """Drop rows whose k-NN majority vote disagrees with their label.

    One pass over the original neighborhood structure, no cascading. By
    default only majority-class rows are dropped (undersampling); with
    edit_both the rule applies to both classes (hybrid cleaning).
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if len(y) <= k:
        raise SizeError(f"ENN needs more than k={k} rows")
    majority = _majority_label(y)
    remove = []
    for i in range(len(y)):
        if not edit_both and y[i] != majority:
            continue
        votes = y[knn_query(X, i, k, exclude_self=True)]
        if (votes == y[i]).sum() * 2 < k:
            remove.append(i)
    keep = np.setdiff1d(np.arange(len(y)), remove)
    return ResampleOutcome(X[keep], y[keep], removed_rows=remove)


def _compose_cleaning(base: ResampleOutcome, cleaner) -> ResampleOutcome:
    """Run a cleaning step on an oversampled set, remapping indices."""
    cleaned = cleaner(base.X, base.y)
    n_original = len(base.y) - len(base.synthetic_rows)
    keep = np.setdiff1d(np.arange(len(base.y)), cleaned.removed_rows)
    position = {old: new for new, old in enumerate(keep)}
    synthetic = [position[i] for i in base.synthetic_rows if i in position]
    removed_original = [i for i in cleaned.removed_rows if i < n_original]
    return ResampleOutcome(cleaned.X, cleaned.y, synthetic, removed_original)


def smote_tomek(X: np.ndarray, y: np.ndarray, k: int = 5, seed: int = 0) -> ResampleOutcome:
    """SMOTE, then link cleaning iterated until no cross-class mutual
    1-NN pair remains among retained rows.

    Removal always targets the input's majority class; iteration is needed
    because deleting one link's endpoint can expose a new mutual pair.
    """
    out = smote(X, y, k=k, seed=seed)
    majority = _majority_label(np.asarray(y, dtype=int))

    def clean_to_fixpoint(Xc, yc):
        removed = []
        index = np.arange(len(yc))
        while True:
            links = [(a, b) for a, b in tomek_links(Xc, yc) if majority in (yc[a], yc[b])]
            drop = sorted({a if yc[a] == majority else b for a, b in links})
            if not drop:
                break
            removed.extend(index[drop].tolist())
            keep = np.setdiff1d(np.arange(len(yc)), drop)
            Xc, yc, index = Xc[keep], yc[keep], index[keep]
        return ResampleOutcome(Xc, yc, removed_rows=removed)

    return _compose_cleaning(out, clean_to_fixpoint)


def smote_enn(X: np.ndarray, y: np.ndarray, k: int = 5, enn_k: int = 3, seed: int = 0) -> ResampleOutcome:
    """SMOTE, then a both-class edited-nearest-neighbor pass."""
    out = smote(X, y, k=k, seed=seed)
    return _compose_cleaning(
        out, lambda Xc, yc: enn_edit(Xc, yc, k=enn_k, edit_both=True)
    )


def apply_strategy(name: str, X: np.ndarray, y: np.ndarray, seed: int = 0) -> ResampleOutcome:
    """Dispatch by CLI strategy token."""
    if name == "none":
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        return ResampleOutcome(X.copy(), y.copy())
    if name == "smote":
        return smote(X, y, seed=seed)
    if name == "adasyn":
        return adasyn(X, y, seed=seed)
    if name == "tomek":
        return tomek_clean(X, y)
    if name == "enn":
        return enn_edit(X, y)
    if name == "smote-tomek":
        return smote_tomek(X, y, seed=seed)
    if name == "smote-enn":
        return smote_enn(X, y, seed=seed)
    raise StrategyError(f"unknown resampling strategy '{name}'")
