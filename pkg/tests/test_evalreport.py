import re

import numpy as np
import pytest

from bvrshotlab.errors import DataError
from bvrshotlab.evalreport import (
    ConfusionCounts,
    MetricsRow,
    confusion_counts,
    correlation_color,
    measure_inference_time,
    metrics_from_confusion,
    read_results_csv,
    relative_f1_change,
    render_correlation_heatmap,
    render_report,
)
from bvrshotlab.models import fit_knn


class TestConfusion:
    def test_perfect_predictions(self):
        c = confusion_counts([1, 0, 1, 0], [1, 0, 1, 0])
        assert (c.fp, c.fn) == (0, 0)
        assert (c.tp, c.tn) == (2, 2)

    def test_enumerated_case(self):
        c = confusion_counts([1, 1, 0, 0], [1, 0, 1, 0])
        assert (c.tp, c.fn, c.fp, c.tn) == (1, 1, 1, 1)

    def test_random_tally_oracle(self):
        rng = np.random.default_rng(0)
        y_true = (rng.random(1000) < 0.3).astype(int)
        y_pred = (rng.random(1000) < 0.5).astype(int)
        c = confusion_counts(y_true, y_pred)
        tally = {"tp": 0, "fp": 0, "fn": 0, "tn": 0}
        for t, p in zip(y_true, y_pred):
            key = ("t" if t == p else "f") + ("p" if p == 1 else "n")
            tally[key] += 1
        assert (c.tp, c.fp, c.fn, c.tn) == (
            tally["tp"], tally["fp"], tally["fn"], tally["tn"],
        )
        assert c.total == 1000

    def test_length_mismatch(self):
        with pytest.raises(DataError):
            confusion_counts([1, 0], [1])


class TestMetrics:
    def test_standard_formulas(self):
        c = ConfusionCounts(tp=30, fp=10, fn=20, tn=40)
        accuracy, precision, recall, f1 = metrics_from_confusion(c)
        assert accuracy == pytest.approx(0.7)
        assert precision == pytest.approx(0.75)
        assert recall == pytest.approx(0.6)
        assert f1 == pytest.approx(2 * 0.75 * 0.6 / 1.35)

    def test_zero_division_convention(self):
        with pytest.warns(UserWarning):
            _, precision, recall, f1 = metrics_from_confusion(
                ConfusionCounts(tp=0, fp=0, fn=5, tn=5)
            )
        assert precision == 0.0 and f1 == 0.0

    def test_harmonic_mean_consistency_published_pairs(self):
        # build integer confusions realizing (0.686, 0.262) and (0.415, 0.528)
        for prec, rec, f1_expected in [(0.686, 0.262, 0.379), (0.415, 0.528, 0.465)]:
            a, b = round(prec * 1000), round(rec * 1000)
            c = ConfusionCounts(tp=a * b, fp=(1000 - a) * b, fn=a * (1000 - b), tn=0)
            _, p, r, f1 = metrics_from_confusion(c)
            assert p == pytest.approx(prec, abs=1e-9)
            assert r == pytest.approx(rec, abs=1e-9)
            assert f1 == pytest.approx(f1_expected, abs=2e-3)

    def test_constant_negative_accuracy_is_majority_fraction(self):
        y_true = np.array([1] * 1198 + [0] * 8802)
        y_pred = np.zeros_like(y_true)
        with pytest.warns(UserWarning):
            accuracy, _, recall, _ = metrics_from_confusion(
                confusion_counts(y_true, y_pred)
            )
        assert accuracy == pytest.approx(0.8802)
        assert recall == 0.0


class TestTiming:
    def test_single_repeat_positive(self):
        rng = np.random.default_rng(1)
        X = rng.normal(size=(60, 2))
        y = (rng.random(60) < 0.5).astype(int)
        model = fit_knn(X, y, k=5)
        ms = measure_inference_time(model, X, repeats=1)
        assert ms > 0.0 and np.isfinite(ms)

    def test_knn_scales_with_training_size(self):
        rng = np.random.default_rng(2)
        X_small = rng.normal(size=(300, 4))
        y_small = (rng.random(300) < 0.5).astype(int)
        X_big = rng.normal(size=(3000, 4))
        y_big = (rng.random(3000) < 0.5).astype(int)
        queries = rng.normal(size=(50, 4))
        small = fit_knn(X_small, y_small, k=5)
        big = fit_knn(X_big, y_big, k=5)
        t_small = measure_inference_time(small, queries, repeats=5)
        t_big = measure_inference_time(big, queries, repeats=5)
        assert t_big > t_small


def sample_rows():
    return [
        MetricsRow("rf", "none", 0.895, 0.686, 0.262, 0.379, 160.8),
        MetricsRow("rf", "smote", 0.851, 0.415, 0.528, 0.465, 108.3),
        MetricsRow("lr", "none", 0.877, 0.421, 0.003, 0.006, 1.4),
        MetricsRow("lr", "smote", 0.655, 0.215, 0.685, 0.327, 1.1),
    ]


class TestReport:
    def test_relative_change_example(self):
        changes = relative_f1_change(sample_rows())
        assert changes[("rf", "smote")] == pytest.approx(22.69, abs=0.01)

    def test_report_files_and_round_trip(self, tmp_path):
        paths = render_report(sample_rows(), tmp_path)
        parsed = read_results_csv(paths["results_csv"])
        assert len(parsed) == 4
        assert parsed[0]["model"] == "rf"
        assert float(parsed[1]["f1"]) == pytest.approx(0.465, abs=1e-6)
        assert parsed[1]["f1_change_pct"] == "22.69"
        md = paths["results_md"].read_text()
        assert "**0.465**" in md  # best resampled F1 bolded
        assert "**0.379**" in md  # best baseline F1 bolded
        assert "+22.69%" in md
        # timing lives in its own file, away from the deterministic metrics
        results_text = paths["results_csv"].read_text()
        assert "160.8" not in results_text
        timings = read_results_csv(tmp_path / "timings.csv")
        assert float(timings[0]["inference_time_ms"]) == pytest.approx(160.8)

    def test_single_row_marked_best(self, tmp_path):
        paths = render_report(sample_rows()[:1], tmp_path)
        assert "**0.379**" in paths["results_md"].read_text()

    def test_empty_rows_rejected(self, tmp_path):
        with pytest.raises(DataError):
            render_report([], tmp_path)


class TestHeatmap:
    def _matrix(self, n=12):
        rng = np.random.default_rng(3)
        A = rng.uniform(-1, 1, size=(n, n))
        M = (A + A.T) / 2
        np.fill_diagonal(M, 1.0)
        return M

    def test_cell_count(self, tmp_path):
        path = tmp_path / "corr.svg"
        names = tuple(f"v{i}" for i in range(12))
        render_correlation_heatmap(self._matrix(), names, path)
        text = path.read_text()
        assert text.startswith("<svg")
        assert len(re.findall(r'class="cell-label"', text)) == 144

    def test_identity_annotations(self, tmp_path):
        path = tmp_path / "corr.svg"
        M = np.eye(3)
        render_correlation_heatmap(M, ("a", "b", "c"), path)
        text = path.read_text()
        assert text.count(">1.00</text>") == 3

    def test_extreme_negative_color(self, tmp_path):
        M = np.array([[1.0, -1.0], [-1.0, 1.0]])
        path = tmp_path / "corr.svg"
        render_correlation_heatmap(M, ("a", "b"), path)
        assert correlation_color(-1.0) in path.read_text()
        assert correlation_color(-1.0) == "#2166ac"
        assert correlation_color(1.0) == "#b2182b"

    def test_non_square_rejected(self, tmp_path):
        with pytest.raises(DataError):
            render_correlation_heatmap(np.zeros((2, 3)), ("a", "b"), tmp_path / "x.svg")
