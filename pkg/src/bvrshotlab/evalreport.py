"""Test-set metrics, inference timing, and report rendering.

The positive class is KILL (label 1). Precision, recall, and F1 fall back
to 0 with a warning when their denominators vanish, so downstream ordering
always works. Inference time is the median wall-clock duration of whole
test-set prediction passes after one warm-up.
"""

from __future__ import annotations

import csv
import time
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion_counts(y_true, y_pred) -> ConfusionCounts:
    y_true = np.asarray(y_true, dtype=int)
    y_pred = np.asarray(y_pred, dtype=int)
    if y_true.shape != y_pred.shape:
        raise DataError(f"length mismatch: {y_true.shape} vs {y_pred.shape}")
    return ConfusionCounts(
        tp=int(((y_true == 1) & (y_pred == 1)).sum()),
        fp=int(((y_true == 0) & (y_pred == 1)).sum()),
        fn=int(((y_true == 1) & (y_pred == 0)).sum()),
        tn=int(((y_true == 0) & (y_pred == 0)).sum()),
    )


def metrics_from_confusion(c: ConfusionCounts) -> tuple[float, float, float, float]:
    """(accuracy, precision, recall, f1); zero denominators give 0."""
    if c.total == 0:
        raise DataError("empty confusion counts")
    accuracy = (c.tp + c.tn) / c.total
    if c.tp + c.fp == 0:
        warnings.warn("no positive predictions: precision set to 0")
        precision = 0.0
    else:
        precision = c.tp / (c.tp + c.fp)
    if c.tp + c.fn == 0:
        warnings.warn("no positive labels: recall set to 0")
        recall = 0.0
    else:
        recall = c.tp / (c.tp + c.fn)
    if precision + recall == 0.0:
        f1 = 0.0
    else:
        f1 = 2.0 * precision * recall / (precision + recall)
    return accuracy, precision, recall, f1


@dataclass
class MetricsRow:
    model: str
    resampler: str
    accuracy: float
    precision: float
    recall: float
    f1: float
    inference_time_ms: float


def measure_inference_time(model, X_test: np.ndarray, repeats: int = 5) -> float:
    """Median milliseconds to predict the whole test set."""
    X_test = np.asarray(X_test, dtype=float)
    model.predict(X_test)  # warm-up
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        model.predict(X_test)
        times.append((time.perf_counter() - start) * 1000.0)
    return float(np.median(times))


def relative_f1_change(rows: list[MetricsRow]) -> dict[tuple[str, str], float | None]:
    """Per (model, resampler): percent F1 change against the model's
    no-resampler baseline; None when no baseline exists or it is zero."""
    baselines = {r.model: r.f1 for r in rows if r.resampler == "none"}
    out = {}
    for r in rows:
        if r.resampler == "none":
            continue
        base = baselines.get(r.model)
        if base is None or base == 0.0:
            out[(r.model, r.resampler)] = None
        else:
            out[(r.model, r.resampler)] = (r.f1 - base) / base * 100.0
    return out


def _best_f1_keys(rows: list[MetricsRow]) -> set[tuple[str, str]]:
    """Bolding convention: best F1 without resampling and best with."""
    best = set()
    for group in (
        [r for r in rows if r.resampler == "none"],
        [r for r in rows if r.resampler != "none"],
    ):
        if group:
            top = max(group, key=lambda r: r.f1)
            best.add((top.model, top.resampler))
    return best


def render_report(rows: list[MetricsRow], out_dir: str | Path) -> dict[str, Path]:
    """Write results.csv (deterministic), timings.csv, and results.md.

    Timing lives outside results.csv so repeated runs with one master seed
    produce byte-identical metric files.
    """
    if not rows:
        raise DataError("no metric rows to report")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    changes = relative_f1_change(rows)
    best = _best_f1_keys(rows)

    results_csv = out_dir / "results.csv"
    with open(results_csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["model", "resampler", "accuracy", "precision", "recall", "f1", "f1_change_pct"]
        )
        for r in rows:
            change = changes.get((r.model, r.resampler))
            writer.writerow(
                [
                    r.model,
                    r.resampler,
                    f"{r.accuracy:.6f}",
                    f"{r.precision:.6f}",
                    f"{r.recall:.6f}",
                    f"{r.f1:.6f}",
                    "" if change is None else f"{change:.2f}",
                ]
            )

    timings_csv = out_dir / "timings.csv"
    with open(timings_csv, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "resampler", "inference_time_ms"])
        for r in rows:
            writer.writerow([r.model, r.resampler, f"{r.inference_time_ms:.3f}"])

    lines = [
        "# Classification results",
        "",
        "| MODEL | ACC | PREC | REC | F1 | IT[ms] | dF1 vs none |",
        "|---|---|---|---|---|---|---|",
    ]
    for r in rows:
        label = r.model.upper() if r.resampler == "none" else f"{r.model.upper()} + {r.resampler.upper()}"
        f1_text = f"{r.f1:.3f}"
        if (r.model, r.resampler) in best:
            f1_text = f"**{f1_text}**"
        change = changes.get((r.model, r.resampler))
        change_text = "" if change is None else f"{change:+.2f}%"
        lines.append(
            f"| {label} | {r.accuracy:.3f} | {r.precision:.3f} | {r.recall:.3f} "
            f"| {f1_text} | {r.inference_time_ms:.1f} | {change_text} |"
        )
    lines.append("")
    results_md = out_dir / "results.md"
    results_md.write_text("\n".join(lines))
    return {"results_csv": results_csv, "timings_csv": timings_csv, "results_md": results_md}


def read_results_csv(path: str | Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


# diverging color scale endpoints and midpoint (blue -> white -> red)
_NEG_COLOR = (33, 102, 172)
_MID_COLOR = (247, 247, 247)
_POS_COLOR = (178, 24, 43)


def _blend(c0, c1, t: float) -> str:
    rgb = tuple(round(a + (b - a) * t) for a, b in zip(c0, c1))
    return f"#{rgb[0]:02x}{rgb[1]:02x}{rgb[2]:02x}"


def correlation_color(v: float) -> str:
    v = max(-1.0, min(1.0, v))
    if v < 0.0:
        return _blend(_MID_COLOR, _NEG_COLOR, -v)
    return _blend(_MID_COLOR, _POS_COLOR, v)


def render_correlation_heatmap(
    matrix: np.ndarray, names: tuple[str, ...], path: str | Path
) -> None:
    """Self-contained SVG: colored grid with one annotation per cell."""
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DataError(f"heatmap needs a square matrix, got {matrix.shape}")
    if len(names) != matrix.shape[0]:
        raise DataError("name count does not match the matrix size")
    n = matrix.shape[0]
    cell = 46
    margin = 150
    size = margin + n * cell + 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}" font-family="monospace" font-size="11">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i, name in enumerate(names):
        y = margin + i * cell + cell / 2 + 4
        parts.append(f'<text x="{margin - 6}" y="{y}" text-anchor="end">{name}</text>')
        x = margin + i * cell + cell / 2
        parts.append(
            f'<text x="{x}" y="{margin - 6}" text-anchor="start" '
            f'transform="rotate(-60 {x} {margin - 6})">{name}</text>'
        )
    for i in range(n):
        for j in range(n):
            x = margin + j * cell
            y = margin + i * cell
            color = correlation_color(matrix[i, j])
            parts.append(
                f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="{color}" stroke="#999" stroke-width="0.5"/>'
            )
            text_color = "#ffffff" if abs(matrix[i, j]) > 0.6 else "#000000"
            parts.append(
                f'<text class="cell-label" x="{x + cell / 2}" y="{y + cell / 2 + 4}" '
                f'text-anchor="middle" fill="{text_color}">{matrix[i, j]:.2f}</text>'
            )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts))
