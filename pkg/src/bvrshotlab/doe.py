"""Experiment space definition and Latin hypercube designs.

The scenario is driven by 15 input variables (altitudes, speeds, radar and
missile parameters, formation spacings, and two categorical choices). The
sampler draws one value per stratum per variable: for n cases the [min, max]
interval of each variable is cut into n equal-width strata and exactly one
uniform draw lands in each, with the stratum order shuffled independently
per variable.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DecodeError, SpecificationError
from .rng import make_generator

M_PER_KFT = 304.8
M_PER_KM = 1000.0

CONTINUOUS = "continuous"
BINARY = "binary"
CATEGORICAL = "two-level-categorical"


@dataclass(frozen=True)
class VariableSpec:
    name: str
    min: float
    max: float
    unit: str
    kind: str = CONTINUOUS

    def validate(self) -> None:
        if self.kind == CONTINUOUS:
            if not self.min < self.max:
                raise SpecificationError(
                    f"variable '{self.name}': min {self.min} must be < max {self.max}"
                )
        elif self.kind in (BINARY, CATEGORICAL):
            if (self.min, self.max) not in ((0.0, 1.0), (1.0, 2.0)):
                raise SpecificationError(
                    f"variable '{self.name}': two-level bounds must be "
                    f"{{0,1}} or {{1,2}}, got {{{self.min},{self.max}}}"
                )
        else:
            raise SpecificationError(f"variable '{self.name}': unknown kind '{self.kind}'")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.min + self.max)


# Canonical 15-variable registry, in fixed order. Bounds are in native units;
# conversion to SI happens once, in decode_case.
VARIABLES: tuple[VariableSpec, ...] = (
    VariableSpec("blue_alt_kft", 27.5, 42.5, "kft"),
    VariableSpec("red_alt_kft", 27.5, 42.5, "kft"),
    VariableSpec("blue_speed_mach", 0.9, 1.5, "Mach"),
    VariableSpec("red_speed_mach", 0.9, 1.5, "Mach"),
    VariableSpec("blue_track_range_km", 150.0, 300.0, "km"),
    VariableSpec("blue_missile_range_factor", 1.0, 2.0, "dimensionless"),
    VariableSpec("blue_rcs_delta_db", -10.0, 10.0, "dBm2"),
    VariableSpec("blue_missile_act_dist_km", 15.0, 30.0, "km"),
    VariableSpec("blue_shot_philosophy_pct", 50.0, 70.0, "%"),
    VariableSpec("blue_spacing_deg", 0.1, 1.0, "degrees-longitude"),
    VariableSpec("red_spacing_deg", 0.1, 1.0, "degrees-longitude"),
    VariableSpec("blue_cap_mach", 0.7, 0.75, "Mach"),
    VariableSpec("red_cap_mach", 0.7, 0.75, "Mach"),
    VariableSpec("blue_concept", 1.0, 2.0, "dimensionless", CATEGORICAL),
    VariableSpec("blue_six_ship", 0.0, 1.0, "dimensionless", BINARY),
)

VARIABLE_NAMES: tuple[str, ...] = tuple(v.name for v in VARIABLES)
_BY_NAME = {v.name: v for v in VARIABLES}


def variable(name: str) -> VariableSpec:
    return _BY_NAME[name]


@dataclass(frozen=True)
class DesignMatrix:
    columns: tuple[str, ...]
    values: np.ndarray  # n_cases x len(columns), native units, read-only

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def n_cases(self) -> int:
        return self.values.shape[0]

    def row(self, i: int) -> np.ndarray:
        return self.values[i]


def lhs_sample(
    specs: list[VariableSpec] | tuple[VariableSpec, ...] = VARIABLES,
    n_cases: int = 240,
    seed: int = 0,
) -> DesignMatrix:
    """Stratified Latin hypercube over the given variables.

    Each column uses its own Philox stream keyed by (seed, column name), so
    adding, removing, or reordering columns never changes another column's
    draws. Per column the stratum order is a uniform random permutation and
    the position inside each stratum is uniform.
    """
    if n_cases < 1:
        raise SpecificationError(f"n_cases must be >= 1, got {n_cases}")
    if not specs:
        raise SpecificationError("no variables given")
    for spec in specs:
        spec.validate()

    values = np.empty((n_cases, len(specs)))
    for j, spec in enumerate(specs):
        rng = make_generator(seed, "lhs", spec.name)
        strata = rng.permutation(n_cases)
        offsets = rng.random(n_cases)
        unit = (strata + offsets) / n_cases
        values[:, j] = spec.min + unit * (spec.max - spec.min)
    return DesignMatrix(tuple(s.name for s in specs), values)


@dataclass(frozen=True)
class SimCase:
    """One decoded design row, in SI units where applicable."""

    blue_alt_m: float
    red_alt_m: float
    blue_speed_mach: float
    red_speed_mach: float
    blue_track_range_m: float
    blue_missile_range_factor: float
    blue_rcs_delta_db: float
    blue_missile_act_dist_m: float
    blue_shot_philosophy_pct: float
    blue_spacing_deg: float
    red_spacing_deg: float
    blue_cap_mach: float
    red_cap_mach: float
    blue_concept: int
    blue_six_ship: bool


def decode_case(row: np.ndarray | list[float]) -> SimCase:
    """Decode one native-unit design row into a SimCase.

    kft and km convert to meters here, exactly once. Mach stays Mach (it is
    converted to m/s at the altitude where it is used). The two two-level
    columns threshold at their interval midpoint: below the midpoint decodes
    to the first level.
    """
    row = np.asarray(row, dtype=float)
    if row.shape != (len(VARIABLES),):
        raise DecodeError(f"expected {len(VARIABLES)} values, got shape {row.shape}")
    for spec, value in zip(VARIABLES, row):
        if not (spec.min <= value <= spec.max):
            raise DecodeError(
                f"column '{spec.name}': value {value} outside [{spec.min}, {spec.max}]"
            )
    v = {name: float(value) for name, value in zip(VARIABLE_NAMES, row)}
    concept_spec = _BY_NAME["blue_concept"]
    six_spec = _BY_NAME["blue_six_ship"]
    return SimCase(
        blue_alt_m=v["blue_alt_kft"] * M_PER_KFT,
        red_alt_m=v["red_alt_kft"] * M_PER_KFT,
        blue_speed_mach=v["blue_speed_mach"],
        red_speed_mach=v["red_speed_mach"],
        blue_track_range_m=v["blue_track_range_km"] * M_PER_KM,
        blue_missile_range_factor=v["blue_missile_range_factor"],
        blue_rcs_delta_db=v["blue_rcs_delta_db"],
        blue_missile_act_dist_m=v["blue_missile_act_dist_km"] * M_PER_KM,
        blue_shot_philosophy_pct=v["blue_shot_philosophy_pct"],
        blue_spacing_deg=v["blue_spacing_deg"],
        red_spacing_deg=v["red_spacing_deg"],
        blue_cap_mach=v["blue_cap_mach"],
        red_cap_mach=v["red_cap_mach"],
        # first level (1) below the midpoint, second level (2) at or above
        blue_concept=1 if v["blue_concept"] < concept_spec.midpoint else 2,
        # level 0 means "six blue aircraft", level 1 means "not six"
        blue_six_ship=bool(v["blue_six_ship"] < six_spec.midpoint),
    )


def save_design(design: DesignMatrix, path: str | Path) -> None:
    """Write a design to CSV, native units, 6 significant digits."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(design.columns)
        for row in design.values:
            writer.writerow([format(x, ".6g") for x in row])


def load_design(path: str | Path) -> DesignMatrix:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        values = np.array([[float(x) for x in row] for row in reader])
    if values.ndim != 2 or values.shape[1] != len(header):
        raise DecodeError(f"malformed design file {path}")
    return DesignMatrix(header, values)
