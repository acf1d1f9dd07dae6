"""Constructive engagement simulator."""

from .behavior import Action, SenseResult, behavior_step, fire_decision, sense
from .engagement import DT_S, MAX_TIME_S, build_world, run_engagement
from .entities import (
    AircraftState,
    Behavior,
    Guidance,
    MissileState,
    RunSummary,
    ShotEvent,
    WorldState,
)
from .missile import KILL, NO_KILL, missile_step, resolve_endgame
from .physics import M_PER_DEG_LON, bearing_deg, speed_of_sound, wrap180, wrap360
from .platforms import (
    BLUE_CONCEPT_1,
    BLUE_CONCEPT_2,
    RED_PLATFORM,
    PlatformSpec,
    blue_platform,
)
from .wez import effective_detection_range, scan_detection_range, wez_max_range

__all__ = [
    "Action",
    "AircraftState",
    "Behavior",
    "BLUE_CONCEPT_1",
    "BLUE_CONCEPT_2",
    "DT_S",
    "Guidance",
    "KILL",
    "M_PER_DEG_LON",
    "MAX_TIME_S",
    "MissileState",
    "NO_KILL",
    "PlatformSpec",
    "RED_PLATFORM",
    "RunSummary",
    "SenseResult",
    "ShotEvent",
    "WorldState",
    "bearing_deg",
    "behavior_step",
    "blue_platform",
    "build_world",
    "effective_detection_range",
    "fire_decision",
    "missile_step",
    "resolve_endgame",
    "run_engagement",
    "scan_detection_range",
    "sense",
    "speed_of_sound",
    "wez_max_range",
    "wrap180",
    "wrap360",
]
