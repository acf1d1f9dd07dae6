"""Fixed aircraft platform parameters.

Missile loadouts and baseline radar cross sections per platform; turn rate
and dash Mach are common performance caps for all fighters in the scenario.
The red side's sensor and shot parameters never vary across the experiment,
only the blue side's do.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class PlatformSpec:
    side: str  # "blue" | "red"
    concept: int | str  # 1 | 2 | "red"
    missile_count: int
    baseline_rcs_db: float  # frontal, dBm2
    max_turn_rate_deg_s: float
    max_mach: float


RED_PLATFORM = PlatformSpec("red", "red", 4, -10.0, 7.0, 1.5)
BLUE_CONCEPT_1 = PlatformSpec("blue", 1, 3, -10.0, 7.0, 1.5)
BLUE_CONCEPT_2 = PlatformSpec("blue", 2, 6, -25.0, 7.0, 1.5)


def blue_platform(concept: int) -> PlatformSpec:
    if concept == 1:
        return BLUE_CONCEPT_1
    if concept == 2:
        return BLUE_CONCEPT_2
    raise ValueError(f"unknown blue concept {concept}")


# Red-side constants (fixed for every case).
RED_TRACK_RANGE_M = 250_000.0
RED_ACT_DIST_M = 20_000.0
RED_RANGE_FACTOR = 1.0
RED_PHILOSOPHY_PCT = 60.0
