"""Command-line interface.

Exit codes: 0 success, 2 configuration error, 3 stage failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import doe, eda
from .dataset import load_dataset, save_dataset, train_test_split
from .errors import ConfigurationError, ShotlabError, StageError
from .evalreport import (
    MetricsRow,
    read_results_csv,
    render_correlation_heatmap,
    render_report,
)
from .harness import (
    ExperimentConfig,
    build_dataset_from_files,
    evaluate_models,
    parse_config,
    run_pipeline,
    simulate_design,
    tune_families,
)
from .models import BEST_HYPERPARAMETERS, FAMILIES, grid_for, grid_search_cv
from .resample import STRATEGY_NAMES
from .rng import derive_seed
from .simcore.io import write_runs, write_shots

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STAGE = 3


def _cmd_doe(args) -> int:
    design = doe.lhs_sample(doe.VARIABLES, args.cases, args.seed)
    doe.save_design(design, args.out)
    print(f"wrote {args.out}: {design.n_cases} cases x {len(design.columns)} variables")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    design = doe.load_design(args.design)
    shot_rows, summaries = simulate_design(
        design, args.seeds, args.master_seed, jobs=args.jobs
    )
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_shots(out_dir / "shots.csv", shot_rows)
    write_runs(out_dir / "runs.csv", summaries)
    kills = sum(1 for _, _, e in shot_rows if e.outcome == "KILL")
    print(
        f"{len(summaries)} runs, {len(shot_rows)} shots ({kills} kills) "
        f"-> {out_dir / 'shots.csv'}"
    )
    return EXIT_OK


def _cmd_build_dataset(args) -> int:
    ds = build_dataset_from_files(Path(args.shots), Path(args.design))
    save_dataset(ds, args.out)
    kills = int(ds.y.sum())
    print(f"wrote {args.out}: {len(ds)} rows, {kills} kills")
    return EXIT_OK


def _cmd_eda(args) -> int:
    ds = load_dataset(args.dataset)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stats = eda.describe(ds)
    corr, names = eda.pearson_matrix(ds)
    mi = eda.mutual_info_rank(ds)
    eda.save_describe_csv(stats, out_dir / "eda_stats.csv")
    eda.save_correlation_csv(corr, names, out_dir / "correlation.csv")
    render_correlation_heatmap(corr, names, out_dir / "correlation.svg")
    eda.write_eda_report(ds, stats, corr, names, mi, out_dir / "eda_report.md")
    print(f"EDA artifacts in {out_dir}")
    return EXIT_OK


def _cmd_tune(args) -> int:
    ds = load_dataset(args.dataset)
    train, _ = train_test_split(ds, seed=derive_seed(args.seed, "split"))
    grid = grid_for(args.family, args.grid)
    result = grid_search_cv(
        args.family,
        grid,
        train.X,
        train.y,
        resampler=args.resampler,
        seed=derive_seed(args.seed, "tune", args.family),
    )
    print(f"best {args.family} params: {result.best_params} (mean F1 {result.best_score:.4f})")
    if args.out:
        Path(args.out).write_text(json.dumps(result.best_params, indent=2))
        print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_train(args) -> int:
    from .dataset import apply_scaler, fit_scaler
    from .models import SCALED_FAMILIES, fit_model, save_model
    from .resample import apply_strategy

    ds = load_dataset(args.dataset)
    train, _ = train_test_split(ds, seed=derive_seed(args.seed, "split"))
    params = (
        json.loads(Path(args.params).read_text())
        if args.params
        else dict(BEST_HYPERPARAMETERS[args.family])
    )
    X = train.X
    scaler = None
    if args.family in SCALED_FAMILIES:
        scaler = fit_scaler(X)
        X = apply_scaler(scaler, X)
    out = apply_strategy(
        args.resampler, X, train.y, seed=derive_seed(args.seed, "train-resample", args.family, args.resampler)
    )
    model = fit_model(
        args.family, out.X, out.y, params, seed=derive_seed(args.seed, "fit", args.family, args.resampler)
    )
    save_model(model, args.out, scaler)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    config = ExperimentConfig(
        master_seed=args.master_seed,
        resamplers=tuple(args.resamplers.split(",")),
        models=tuple(args.families.split(",")),
        grid_mode=args.grid_mode,
        artifact_dir=args.out_dir,
    ).validate()
    ds = load_dataset(args.dataset)
    train, test = train_test_split(
        ds, config.test_fraction, seed=derive_seed(config.master_seed, "split")
    )
    tuned = tune_families(config, train)
    rows = evaluate_models(config, train, test, tuned, model_dir=Path(args.out_dir) / "models")
    paths = render_report(rows, args.out_dir)
    print(f"wrote {paths['results_csv']} and {paths['results_md']}")
    return EXIT_OK


def _cmd_report(args) -> int:
    rows_raw = read_results_csv(args.results)
    timings = {}
    timings_path = Path(args.results).with_name("timings.csv")
    if timings_path.exists():
        for row in read_results_csv(timings_path):
            timings[(row["model"], row["resampler"])] = float(row["inference_time_ms"])
    rows = [
        MetricsRow(
            model=r["model"],
            resampler=r["resampler"],
            accuracy=float(r["accuracy"]),
            precision=float(r["precision"]),
            recall=float(r["recall"]),
            f1=float(r["f1"]),
            inference_time_ms=timings.get((r["model"], r["resampler"]), 0.0),
        )
        for r in rows_raw
    ]
    paths = render_report(rows, args.out_dir)
    print(f"wrote {paths['results_md']}")
    return EXIT_OK


def _cmd_run(args) -> int:
    config = parse_config(args.config)
    manifest = run_pipeline(config)
    for stage, cached in manifest.cached.items():
        print(f"{stage}: {'cached' if cached else 'computed'}")
    print(f"artifacts in {manifest.root}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bvr-shotlab",
        description="Constructive BVR shot generation and imbalanced-learning benchmark",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("doe", help="draw a Latin hypercube design")
    p.add_argument("--cases", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="design.csv")
    p.set_defaults(func=_cmd_doe)

    p = sub.add_parser("simulate", help="run engagements for a design")
    p.add_argument("--design", required=True)
    p.add_argument("--seeds", type=int, default=30)
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--out-dir", default="artifacts")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("build-dataset", help="extract shot records from shots.csv")
    p.add_argument("--shots", required=True)
    p.add_argument("--design", required=True)
    p.add_argument("--out", default="dataset.csv")
    p.set_defaults(func=_cmd_build_dataset)

    p = sub.add_parser("eda", help="descriptive statistics, correlation, MI ranking")
    p.add_argument("--dataset", required=True)
    p.add_argument("--out-dir", default="artifacts")
    p.set_defaults(func=_cmd_eda)

    p = sub.add_parser("tune", help="grid search one family")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--resampler", choices=STRATEGY_NAMES, default="none")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", choices=("full", "reduced"), default="reduced")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_tune)

    p = sub.add_parser("train", help="train one (family, resampler) model")
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--dataset", required=True)
    p.add_argument("--params", help="JSON hyperparameter file (default: tuned best)")
    p.add_argument("--resampler", choices=STRATEGY_NAMES, default="none")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="model.json")
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("evaluate", help="train and score all (family, resampler) pairs")
    p.add_argument("--dataset", required=True)
    p.add_argument("--families", default=",".join(FAMILIES))
    p.add_argument("--resamplers", default="none,smote")
    p.add_argument("--grid-mode", choices=("full", "reduced", "fixed-best"), default="fixed-best")
    p.add_argument("--master-seed", type=int, default=0)
    p.add_argument("--out-dir", default="artifacts")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("report", help="re-render reports from results.csv")
    p.add_argument("--results", required=True)
    p.add_argument("--out-dir", default="artifacts")
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("run", help="run the whole pipeline from a config file")
    p.add_argument("--config", required=True)
    p.set_defaults(func=_cmd_run)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except StageError as exc:
        print(f"stage failure: {exc}", file=sys.stderr)
        return EXIT_STAGE
    except ShotlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_STAGE


if __name__ == "__main__":
    sys.exit(main())
