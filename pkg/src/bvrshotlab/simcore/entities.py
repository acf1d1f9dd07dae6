"""Mutable simulation entities and the per-run world container."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .physics import heading_components
from .platforms import PlatformSpec


class Behavior(enum.Enum):
    CAP = "CAP"
    COMMIT = "COMMIT"
    ENGAGE = "ENGAGE"
    EVADE = "EVADE"


class Guidance(enum.Enum):
    SUPPORTED = "SUPPORTED"
    ACTIVE = "ACTIVE"
    DUMB = "DUMB"


@dataclass(slots=True)
class AircraftState:
    id: str
    side: str
    platform: PlatformSpec
    x: float
    y: float
    z: float
    heading: float  # degrees, 0 = north, clockwise
    speed: float  # m/s, > 0
    alive: bool = True
    missiles_left: int = 0
    behavior: Behavior = Behavior.CAP
    committed_target: str | None = None
    # per-case sensor / shot parameters
    rcs_db: float = -10.0
    track_range_m: float = 250_000.0
    act_dist_m: float = 20_000.0
    philosophy_pct: float = 60.0
    range_factor: float = 1.0
    maneuver_mach: float = 1.2
    cap_mach: float = 0.72
    cruise_alt_m: float = 10_000.0
    # commands (applied under turn/accel/climb limits each tick)
    cmd_heading: float = 0.0
    cmd_mach: float = 0.72
    cmd_alt_m: float = 10_000.0
    # velocity components, kept in sync with heading/speed/climb by the engine
    vx: float = 0.0
    vy: float = 0.0
    vz: float = 0.0
    # bookkeeping
    next_eval_s: float = 0.0
    station_x: float = 0.0
    station_y: float = 0.0
    cap_sign: int = 1
    missiles_fired: int = 0
    dash_time_left_s: float = 30.0  # afterburner budget for evasive dashes
    # detection ranges against each enemy id, precomputed at world build
    track_range_on: dict = field(default_factory=dict)
    scan_range_on: dict = field(default_factory=dict)

    def refresh_velocity(self, vz: float = 0.0) -> None:
        """Recompute velocity components for the current heading and speed."""
        horiz = math.sqrt(max(self.speed * self.speed - vz * vz, 0.0))
        ex, ny = heading_components(self.heading)
        self.vx = horiz * ex
        self.vy = horiz * ny
        self.vz = vz


@dataclass(slots=True)
class MissileState:
    id: str
    side: str
    shooter_id: str
    target_id: str
    x: float
    y: float
    z: float
    vx: float
    vy: float
    vz: float
    speed: float
    activation_distance_m: float
    guidance: Guidance = Guidance.SUPPORTED
    time_of_flight: float = 0.0
    opening_time_s: float = 0.0  # consecutive time with the range increasing
    event_index: int = -1

    def position(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)


@dataclass
class ShotEvent:
    run_id: str
    time_s: float
    shooter_id: str
    shooter_side: str
    target_id: str
    shooter_x: float
    shooter_y: float
    shooter_alt_m: float
    shooter_heading_deg: float
    shooter_speed_ms: float
    target_x: float
    target_y: float
    target_alt_m: float
    target_heading_deg: float
    target_speed_ms: float
    distance_m: float
    off_boresight_deg: float
    delta_heading_deg: float
    wez_rmax_m: float
    outcome: str | None = None  # "KILL" | "NO_KILL", set at flyout resolution


@dataclass
class RunSummary:
    run_id: str
    case_index: int
    seed: int
    blue_survivors: int
    red_survivors: int
    missiles_fired_blue: int
    missiles_fired_red: int
    end_time_s: float


class WorldState:
    """All per-run state: entities, clock, event log, and the run's RNG."""

    def __init__(self, case, rng: np.random.Generator, run_id: str):
        self.case = case
        self.rng = rng
        self.run_id = run_id
        self.time = 0.0
        self.aircraft: list[AircraftState] = []
        self.missiles: list[MissileState] = []
        self.events: list[ShotEvent] = []
        self.by_id: dict[str, AircraftState] = {}
        self._missile_seq = 0

    def add_aircraft(self, aircraft: AircraftState) -> None:
        self.aircraft.append(aircraft)
        self.by_id[aircraft.id] = aircraft

    def next_missile_id(self) -> str:
        mid = f"m{self._missile_seq}"
        self._missile_seq += 1
        return mid

    def enemies_of(self, side: str):
        return [a for a in self.aircraft if a.side != side]

    def alive_count(self, side: str) -> int:
        return sum(1 for a in self.aircraft if a.side == side and a.alive)
