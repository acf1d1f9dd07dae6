"""Weapon engagement zone and radar detection range models.

The launch envelope is a closed-form surrogate for a lookup table: a base
range scaled by multiplicative altitude, closure, and target-aspect terms,
clamped to a plausible missile bracket, then multiplied by the per-case
range factor. The aspect term is normalized so a head-on target (flying
straight at the shooter) at 10 km co-altitude with zero closure gives the
base range exactly.
"""

from __future__ import annotations

import math

from ..errors import GeometryError
from .entities import AircraftState

BASE_RANGE_M = 25_000.0
MIN_RANGE_M = 5_000.0
MAX_RANGE_M = 80_000.0

REFERENCE_RCS_DB = -10.0  # red frontal baseline
SCAN_FRACTION = 0.6


def _clamp(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


def wez_max_range(
    shooter: AircraftState, target: AircraftState, range_factor: float = 1.0
) -> float:
    """Maximum launch range for the current shooter/target geometry."""
    dx = target.x - shooter.x
    dy = target.y - shooter.y
    dz = target.z - shooter.z
    dist = math.sqrt(dx * dx + dy * dy + dz * dz)
    if dist == 0.0:
        raise GeometryError("shooter and target are coincident")

    mean_alt = 0.5 * (shooter.z + target.z)
    alt_term = _clamp(1.0 + 0.4 * (mean_alt - 10_000.0) / 10_000.0, 0.6, 1.4)

    # closing speed, positive when the range is shrinking
    rvx = target.vx - shooter.vx
    rvy = target.vy - shooter.vy
    rvz = target.vz - shooter.vz
    closing = -(dx * rvx + dy * rvy + dz * rvz) / dist
    closure_term = _clamp(1.0 + 0.5 * closing / 600.0, 0.5, 1.5)

    # aspect: angle between the target's velocity and the target->shooter line
    tspeed = math.sqrt(target.vx**2 + target.vy**2 + target.vz**2)
    if tspeed == 0.0:
        cos_aspect = 0.0
    else:
        cos_aspect = (target.vx * -dx + target.vy * -dy + target.vz * -dz) / (
            tspeed * dist
        )
    aspect_term = 0.75 + 0.25 * cos_aspect

    raw = BASE_RANGE_M * alt_term * closure_term * aspect_term
    return range_factor * _clamp(raw, MIN_RANGE_M, MAX_RANGE_M)


def effective_detection_range(radar_range_m: float, target_rcs_db: float) -> float:
    """Track-mode detection range against a target of the given RCS.

    Fourth-root radar-equation scaling around the reference cross section:
    +40 dB of target RCS buys a factor of 10 in range.
    """
    return radar_range_m * 10.0 ** ((target_rcs_db - REFERENCE_RCS_DB) / 40.0)


def scan_detection_range(radar_range_m: float, target_rcs_db: float) -> float:
    """Scan-mode range: 60% of the track-mode range."""
    return SCAN_FRACTION * effective_detection_range(radar_range_m, target_rcs_db)
