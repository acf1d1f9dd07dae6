"""Flat-earth geometry helpers and the standard-atmosphere sound speed."""

from __future__ import annotations

import math

from ..errors import DomainError

# 1 degree of longitude at the equator; the playing field is small enough
# that a single constant is used everywhere.
M_PER_DEG_LON = 111_320.0

_GAMMA_R = 1.4 * 287.05
_LAPSE_K_PER_M = 0.0065
_T0_K = 288.15
TROPOPAUSE_M = 11_000.0
_A_TROPOPAUSE = math.sqrt(_GAMMA_R * (_T0_K - _LAPSE_K_PER_M * TROPOPAUSE_M))


def speed_of_sound(altitude_m: float) -> float:
    """Sound speed in the standard troposphere, constant above 11 km."""
    if altitude_m < 0.0 or altitude_m > 20_000.0:
        raise DomainError(f"altitude {altitude_m} m outside [0, 20000]")
    if altitude_m <= TROPOPAUSE_M:
        return math.sqrt(_GAMMA_R * (_T0_K - _LAPSE_K_PER_M * altitude_m))
    return _A_TROPOPAUSE


def wrap360(angle_deg: float) -> float:
    return angle_deg % 360.0


def wrap180(angle_deg: float) -> float:
    """Map an angle difference into [-180, 180)."""
    return (angle_deg + 180.0) % 360.0 - 180.0


def bearing_deg(from_x: float, from_y: float, to_x: float, to_y: float) -> float:
    """Compass bearing (0 = north/+y, 90 = east/+x) from one point to another."""
    return math.degrees(math.atan2(to_x - from_x, to_y - from_y)) % 360.0


def heading_components(heading_deg: float) -> tuple[float, float]:
    """Unit (east, north) components of a compass heading."""
    rad = math.radians(heading_deg)
    return math.sin(rad), math.cos(rad)
