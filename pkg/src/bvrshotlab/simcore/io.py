"""CSV serialization for shot events and run summaries."""

from __future__ import annotations

import csv
from pathlib import Path

from .entities import RunSummary, ShotEvent

SHOT_COLUMNS = [
    "run_id",
    "case_index",
    "seed",
    "time_s",
    "shooter_id",
    "shooter_side",
    "target_id",
    "shooter_x",
    "shooter_y",
    "shooter_alt_m",
    "shooter_heading_deg",
    "shooter_speed_ms",
    "target_x",
    "target_y",
    "target_alt_m",
    "target_heading_deg",
    "target_speed_ms",
    "distance_m",
    "off_boresight_deg",
    "delta_heading_deg",
    "wez_rmax_m",
    "outcome",
]

RUN_COLUMNS = [
    "run_id",
    "case_index",
    "seed",
    "blue_survivors",
    "red_survivors",
    "missiles_fired_blue",
    "missiles_fired_red",
    "end_time_s",
]

_FLOAT_FMT = ".10g"


def write_shots(path: str | Path, rows: list[tuple[int, int, ShotEvent]]) -> None:
    """Write shot events; rows are (case_index, seed, event) tuples."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SHOT_COLUMNS)
        for case_index, seed, ev in rows:
            writer.writerow(
                [
                    ev.run_id,
                    case_index,
                    seed,
                    format(ev.time_s, _FLOAT_FMT),
                    ev.shooter_id,
                    ev.shooter_side,
                    ev.target_id,
                    format(ev.shooter_x, _FLOAT_FMT),
                    format(ev.shooter_y, _FLOAT_FMT),
                    format(ev.shooter_alt_m, _FLOAT_FMT),
                    format(ev.shooter_heading_deg, _FLOAT_FMT),
                    format(ev.shooter_speed_ms, _FLOAT_FMT),
                    format(ev.target_x, _FLOAT_FMT),
                    format(ev.target_y, _FLOAT_FMT),
                    format(ev.target_alt_m, _FLOAT_FMT),
                    format(ev.target_heading_deg, _FLOAT_FMT),
                    format(ev.target_speed_ms, _FLOAT_FMT),
                    format(ev.distance_m, _FLOAT_FMT),
                    format(ev.off_boresight_deg, _FLOAT_FMT),
                    format(ev.delta_heading_deg, _FLOAT_FMT),
                    format(ev.wez_rmax_m, _FLOAT_FMT),
                    ev.outcome,
                ]
            )


def read_shots(path: str | Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def write_runs(path: str | Path, summaries: list[RunSummary]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RUN_COLUMNS)
        for s in summaries:
            writer.writerow(
                [
                    s.run_id,
                    s.case_index,
                    s.seed,
                    s.blue_survivors,
                    s.red_survivors,
                    s.missiles_fired_blue,
                    s.missiles_fired_red,
                    format(s.end_time_s, _FLOAT_FMT),
                ]
            )


def read_runs(path: str | Path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))
