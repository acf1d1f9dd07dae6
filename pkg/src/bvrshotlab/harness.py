"""End-to-end pipeline: design, simulate, dataset, EDA, tune, evaluate.

A single master seed drives everything: per-task seeds are derived by
hashing the master with stage tags, so results are reproducible end to
end and independent of scheduling. Stages are cached by content digest:
a stage re-runs only when one of its recorded inputs changed.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from multiprocessing import Pool
from pathlib import Path

import numpy as np

from . import doe, eda
from .dataset import (
    Dataset,
    apply_scaler,
    extract_record,
    fit_scaler,
    load_dataset,
    save_dataset,
    train_test_split,
)
from .errors import ConfigurationError, ShotlabError, StageError
from .evalreport import (
    MetricsRow,
    confusion_counts,
    measure_inference_time,
    metrics_from_confusion,
    render_correlation_heatmap,
    render_report,
)
from .models import (
    BEST_HYPERPARAMETERS,
    FAMILIES,
    SCALED_FAMILIES,
    fit_model,
    grid_for,
    grid_search_cv,
    save_model,
)
from .resample import STRATEGY_NAMES, apply_strategy
from .rng import derive_seed
from .simcore import run_engagement
from .simcore.io import read_runs, read_shots, write_runs, write_shots

GRID_MODES = ("full", "reduced", "fixed-best")

PRESETS = {
    "desk": {"n_cases": 24, "seeds_per_case": 5},
    "paper": {"n_cases": 240, "seeds_per_case": 30},
}


@dataclass(frozen=True)
class ExperimentConfig:
    n_cases: int = 24
    seeds_per_case: int = 5
    master_seed: int = 20260809
    resamplers: tuple[str, ...] = ("none", "smote")
    models: tuple[str, ...] = FAMILIES
    grid_mode: str = "fixed-best"
    artifact_dir: str = "artifacts"
    jobs: int = 1
    test_fraction: float = 0.15

    def validate(self) -> "ExperimentConfig":
        if self.n_cases < 1 or self.seeds_per_case < 1:
            raise ConfigurationError("n_cases and seeds_per_case must be positive")
        if self.grid_mode not in GRID_MODES:
            raise ConfigurationError(f"grid_mode must be one of {GRID_MODES}")
        for r in self.resamplers:
            if r not in STRATEGY_NAMES:
                raise ConfigurationError(f"unknown resampler '{r}'")
        for m in self.models:
            if m not in FAMILIES:
                raise ConfigurationError(f"unknown model family '{m}'")
        if self.jobs < 1:
            raise ConfigurationError("jobs must be >= 1")
        return self


_CONFIG_KEYS = {
    "preset",
    "n_cases",
    "seeds_per_case",
    "master_seed",
    "resamplers",
    "models",
    "grid_mode",
    "artifact_dir",
    "jobs",
    "test_fraction",
}


def parse_config(path: str | Path) -> ExperimentConfig:
    """Flat key=value file; '#' starts a comment; unknown keys are errors."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{lineno}: expected key=value, got '{raw}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ConfigurationError(f"{path}:{lineno}: unknown key '{key}'")
        values[key] = value

    kwargs: dict = {}
    preset = values.pop("preset", None)
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigurationError(f"unknown preset '{preset}'")
        kwargs.update(PRESETS[preset])
    for key in ("n_cases", "seeds_per_case", "master_seed", "jobs"):
        if key in values:
            kwargs[key] = int(values.pop(key))
    if "test_fraction" in values:
        kwargs["test_fraction"] = float(values.pop("test_fraction"))
    for key in ("resamplers", "models"):
        if key in values:
            kwargs[key] = tuple(t.strip() for t in values.pop(key).split(",") if t.strip())
    for key in ("grid_mode", "artifact_dir"):
        if key in values:
            kwargs[key] = values.pop(key)
    return ExperimentConfig(**kwargs).validate()


def _digest_file(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _digest_params(params: dict) -> str:
    return hashlib.sha256(json.dumps(params, sort_keys=True).encode()).hexdigest()


@dataclass
class ArtifactManifest:
    root: Path
    stages: dict = field(default_factory=dict)
    cached: dict = field(default_factory=dict)  # stage -> bool, this run

    @property
    def path(self) -> Path:
        return self.root / "manifest.json"

    def load(self) -> None:
        if self.path.exists():
            self.stages = json.loads(self.path.read_text())

    def save(self) -> None:
        self.path.write_text(json.dumps(self.stages, indent=2, sort_keys=True))

    def is_fresh(self, stage: str, inputs: dict[str, str]) -> bool:
        entry = self.stages.get(stage)
        if entry is None or entry.get("inputs") != inputs:
            return False
        for name, digest in entry.get("outputs", {}).items():
            path = self.root / name
            if not path.exists() or _digest_file(path) != digest:
                return False
        return True

    def record(self, stage: str, inputs: dict[str, str], outputs: list[Path]) -> None:
        self.stages[stage] = {
            "inputs": inputs,
            "outputs": {
                str(p.relative_to(self.root)): _digest_file(p) for p in outputs
            },
        }
        self.save()


def _sim_task(args):
    row, case_index, replicate, master_seed = args
    case = doe.decode_case(np.array(row))
    seed = derive_seed(master_seed, "sim", case_index, replicate)
    run_id = f"c{case_index:03d}r{replicate:02d}"
    events, summary = run_engagement(case, seed, case_index=case_index, run_id=run_id)
    return case_index, replicate, events, summary


def simulate_design(
    design: doe.DesignMatrix,
    seeds_per_case: int,
    master_seed: int,
    jobs: int = 1,
):
    """All (case, replicate) runs, in canonical order regardless of jobs."""
    tasks = [
        (design.row(i).tolist(), i, r, master_seed)
        for i in range(design.n_cases)
        for r in range(seeds_per_case)
    ]
    if jobs > 1:
        with Pool(processes=jobs) as pool:
            results = list(pool.imap_unordered(_sim_task, tasks, chunksize=1))
    else:
        results = [_sim_task(t) for t in tasks]
    results.sort(key=lambda item: (item[0], item[1]))
    shot_rows = []
    summaries = []
    for case_index, replicate, events, summary in results:
        seed = derive_seed(master_seed, "sim", case_index, replicate)
        for event in events:
            shot_rows.append((case_index, seed, event))
        summaries.append(summary)
    return shot_rows, summaries


def build_dataset_from_files(shots_path: Path, design_path: Path) -> Dataset:
    design = doe.load_design(design_path)
    cases = {i: doe.decode_case(design.row(i)) for i in range(design.n_cases)}
    records = []
    for row in read_shots(shots_path):
        if row["shooter_side"] != "blue":
            continue
        records.append(extract_record(row, cases[int(row["case_index"])]))
    return Dataset(records)


def _prepare_matrices(train: Dataset, test: Dataset, family: str):
    if family in SCALED_FAMILIES:
        scaler = fit_scaler(train.X)
        return apply_scaler(scaler, train.X), apply_scaler(scaler, test.X), scaler
    return train.X, test.X, None


def tune_families(config: ExperimentConfig, train: Dataset) -> dict[str, dict]:
    """Best hyperparameters per family under the configured grid mode."""
    if config.grid_mode == "fixed-best":
        return {m: dict(BEST_HYPERPARAMETERS[m]) for m in config.models}
    tuned = {}
    for family in config.models:
        grid = grid_for(family, config.grid_mode)
        result = grid_search_cv(
            family,
            grid,
            train.X,
            train.y,
            k=5,
            resampler="none",
            seed=derive_seed(config.master_seed, "tune", family),
        )
        tuned[family] = result.best_params
    return tuned


def evaluate_models(
    config: ExperimentConfig,
    train: Dataset,
    test: Dataset,
    tuned: dict[str, dict],
    model_dir: Path | None = None,
) -> list[MetricsRow]:
    rows = []
    for family in config.models:
        X_train, X_test, scaler = _prepare_matrices(train, test, family)
        for resampler in config.resamplers:
            out = apply_strategy(
                resampler,
                X_train,
                train.y,
                seed=derive_seed(config.master_seed, "train-resample", family, resampler),
            )
            model = fit_model(
                family,
                out.X,
                out.y,
                tuned[family],
                seed=derive_seed(config.master_seed, "fit", family, resampler),
            )
            y_pred = model.predict(X_test)
            accuracy, precision, recall, f1 = metrics_from_confusion(
                confusion_counts(test.y, y_pred)
            )
            rows.append(
                MetricsRow(
                    model=family,
                    resampler=resampler,
                    accuracy=accuracy,
                    precision=precision,
                    recall=recall,
                    f1=f1,
                    inference_time_ms=measure_inference_time(model, X_test),
                )
            )
            if model_dir is not None:
                model_dir.mkdir(parents=True, exist_ok=True)
                save_model(model, model_dir / f"{family}-{resampler}.json", scaler)
    return rows


def run_pipeline(config: ExperimentConfig) -> ArtifactManifest:
    config = config.validate()
    root = Path(config.artifact_dir)
    root.mkdir(parents=True, exist_ok=True)
    manifest = ArtifactManifest(root)
    manifest.load()

    stage = "doe"
    try:
        inputs = {"params": _digest_params({"n_cases": config.n_cases, "seed": config.master_seed})}
        design_path = root / "design.csv"
        if manifest.is_fresh(stage, inputs):
            manifest.cached[stage] = True
        else:
            design = doe.lhs_sample(doe.VARIABLES, config.n_cases, config.master_seed)
            doe.save_design(design, design_path)
            manifest.record(stage, inputs, [design_path])
            manifest.cached[stage] = False

        stage = "simulate"
        inputs = {
            "design.csv": _digest_file(design_path),
            "params": _digest_params(
                {"seeds_per_case": config.seeds_per_case, "master_seed": config.master_seed}
            ),
        }
        shots_path = root / "shots.csv"
        runs_path = root / "runs.csv"
        if manifest.is_fresh(stage, inputs):
            manifest.cached[stage] = True
        else:
            design = doe.load_design(design_path)
            shot_rows, summaries = simulate_design(
                design, config.seeds_per_case, config.master_seed, config.jobs
            )
            write_shots(shots_path, shot_rows)
            write_runs(runs_path, summaries)
            manifest.record(stage, inputs, [shots_path, runs_path])
            manifest.cached[stage] = False

        stage = "dataset"
        inputs = {
            "shots.csv": _digest_file(shots_path),
            "design.csv": _digest_file(design_path),
        }
        dataset_path = root / "dataset.csv"
        if manifest.is_fresh(stage, inputs):
            manifest.cached[stage] = True
        else:
            ds = build_dataset_from_files(shots_path, design_path)
            if len(ds) == 0:
                raise StageError(stage, "simulation produced no blue shots")
            save_dataset(ds, dataset_path)
            manifest.record(stage, inputs, [dataset_path])
            manifest.cached[stage] = False

        stage = "eda"
        inputs = {"dataset.csv": _digest_file(dataset_path)}
        eda_outputs = [
            root / "eda_stats.csv",
            root / "correlation.csv",
            root / "correlation.svg",
            root / "eda_report.md",
        ]
        if manifest.is_fresh(stage, inputs):
            manifest.cached[stage] = True
        else:
            ds = load_dataset(dataset_path)
            stats = eda.describe(ds)
            corr, names = eda.pearson_matrix(ds)
            mi = eda.mutual_info_rank(ds)
            eda.save_describe_csv(stats, eda_outputs[0])
            eda.save_correlation_csv(corr, names, eda_outputs[1])
            render_correlation_heatmap(corr, names, eda_outputs[2])
            eda.write_eda_report(ds, stats, corr, names, mi, eda_outputs[3])
            manifest.record(stage, inputs, eda_outputs)
            manifest.cached[stage] = False

        stage = "tune"
        inputs = {
            "dataset.csv": _digest_file(dataset_path),
            "params": _digest_params(
                {
                    "grid_mode": config.grid_mode,
                    "models": list(config.models),
                    "master_seed": config.master_seed,
                    "test_fraction": config.test_fraction,
                }
            ),
        }
        tuned_path = root / "tuned_params.json"
        if manifest.is_fresh(stage, inputs):
            manifest.cached[stage] = True
            tuned = json.loads(tuned_path.read_text())
        else:
            ds = load_dataset(dataset_path)
            train, _ = train_test_split(
                ds, config.test_fraction, seed=derive_seed(config.master_seed, "split")
            )
            tuned = tune_families(config, train)
            tuned_path.write_text(json.dumps(tuned, indent=2, sort_keys=True))
            manifest.record(stage, inputs, [tuned_path])
            manifest.cached[stage] = False

        stage = "evaluate"
        inputs = {
            "dataset.csv": _digest_file(dataset_path),
            "tuned_params.json": _digest_file(tuned_path),
            "params": _digest_params(
                {
                    "resamplers": list(config.resamplers),
                    "models": list(config.models),
                    "master_seed": config.master_seed,
                    "test_fraction": config.test_fraction,
                }
            ),
        }
        results_csv = root / "results.csv"
        if manifest.is_fresh(stage, inputs):
            manifest.cached[stage] = True
        else:
            ds = load_dataset(dataset_path)
            train, test = train_test_split(
                ds, config.test_fraction, seed=derive_seed(config.master_seed, "split")
            )
            rows = evaluate_models(config, train, test, tuned, model_dir=root / "models")
            paths = render_report(rows, root)
            manifest.record(
                stage,
                inputs,
                [paths["results_csv"], paths["results_md"]],
            )
            manifest.cached[stage] = False
    except ShotlabError:
        raise
    except Exception as exc:  # keep partial artifacts, name the stage
        raise StageError(stage, str(exc)) from exc
    return manifest
