"""Point-mass missile flyout with proportional navigation.

Launch boosts to a fixed speed for a fixed time, after which drag bleeds
speed off quadratically. Guidance starts SUPPORTED by the shooter's track;
it goes ACTIVE once the seeker is within its activation distance of the
target, and DUMB (ballistic, cannot hit) if the shooter dies or lets the
target slip out of the support cone first. The endgame triggers when the
point of closest approach within a step is inside the lethal radius.
"""

from __future__ import annotations

import math

from .entities import Guidance, MissileState, WorldState
from .physics import wrap180, bearing_deg

BOOST_SPEED_MS = 1000.0
BOOST_TIME_S = 8.0
DRAG_COEF = 0.02
DRAG_REF_SPEED_MS = 300.0
PN_GAIN = 3.0
MAX_LATERAL_ACC = 30.0 * 9.80665
SUPPORT_CONE_DEG = 60.0
LETHAL_RADIUS_M = 10.0
KILL_PROBABILITY = 0.9
MAX_TIME_OF_FLIGHT_S = 180.0
OPENING_MISS_TIME_S = 2.0

KILL = "KILL"
NO_KILL = "NO_KILL"


def resolve_endgame(rng, target_alive: bool) -> str:
    """Endgame at the lethal radius: 90% kill chance against a live target."""
    if not target_alive:
        return NO_KILL
    return KILL if rng.random() < KILL_PROBABILITY else NO_KILL


def _resolve(world: WorldState, missile: MissileState, outcome: str) -> None:
    world.events[missile.event_index].outcome = outcome
    if outcome == KILL:
        world.by_id[missile.target_id].alive = False


def missile_step(world: WorldState, missile: MissileState, dt: float = 0.1) -> bool:
    """Advance one step. Returns True when the flyout resolved."""
    target = world.by_id[missile.target_id]
    shooter = world.by_id[missile.shooter_id]

    # support-state transitions; ACTIVE and DUMB are absorbing
    if missile.guidance is Guidance.SUPPORTED:
        if not shooter.alive:
            missile.guidance = Guidance.DUMB
        else:
            off = wrap180(
                bearing_deg(shooter.x, shooter.y, target.x, target.y) - shooter.heading
            )
            if abs(off) > SUPPORT_CONE_DEG:
                missile.guidance = Guidance.DUMB
            else:
                dx = target.x - missile.x
                dy = target.y - missile.y
                dz = target.z - missile.z
                if math.sqrt(dx * dx + dy * dy + dz * dz) <= missile.activation_distance_m:
                    missile.guidance = Guidance.ACTIVE

    # speed profile
    if missile.time_of_flight < BOOST_TIME_S:
        new_speed = BOOST_SPEED_MS
    else:
        new_speed = missile.speed * math.exp(
            -DRAG_COEF * dt * missile.speed / DRAG_REF_SPEED_MS
        )

    # steering: proportional navigation while guided, straight when DUMB
    vx, vy, vz = missile.vx, missile.vy, missile.vz
    if missile.guidance is not Guidance.DUMB:
        rx = target.x - missile.x
        ry = target.y - missile.y
        rz = target.z - missile.z
        r2 = rx * rx + ry * ry + rz * rz
        if r2 > 0.0:
            wx_ = target.vx - vx
            wy_ = target.vy - vy
            wz_ = target.vz - vz
            # LOS rotation rate vector: (r x v_rel) / |r|^2
            ox = (ry * wz_ - rz * wy_) / r2
            oy = (rz * wx_ - rx * wz_) / r2
            oz = (rx * wy_ - ry * wx_) / r2
            ax = PN_GAIN * (oy * vz - oz * vy)
            ay = PN_GAIN * (oz * vx - ox * vz)
            az = PN_GAIN * (ox * vy - oy * vx)
            acc = math.sqrt(ax * ax + ay * ay + az * az)
            if acc > MAX_LATERAL_ACC:
                scale = MAX_LATERAL_ACC / acc
                ax *= scale
                ay *= scale
                az *= scale
            vx += ax * dt
            vy += ay * dt
            vz += az * dt

    norm = math.sqrt(vx * vx + vy * vy + vz * vz)
    if norm > 0.0:
        scale = new_speed / norm
        vx *= scale
        vy *= scale
        vz *= scale
    missile.vx, missile.vy, missile.vz = vx, vy, vz
    missile.speed = new_speed

    # closest approach over [t, t+dt] against the target's current velocity
    px = missile.x - target.x
    py = missile.y - target.y
    pz = missile.z - target.z
    ux = vx - target.vx
    uy = vy - target.vy
    uz = vz - target.vz
    uu = ux * ux + uy * uy + uz * uz
    t_star = 0.0
    if uu > 0.0:
        t_star = -(px * ux + py * uy + pz * uz) / uu
        t_star = 0.0 if t_star < 0.0 else dt if t_star > dt else t_star
    cx = px + ux * t_star
    cy = py + uy * t_star
    cz = pz + uz * t_star
    closest = math.sqrt(cx * cx + cy * cy + cz * cz)

    if closest <= LETHAL_RADIUS_M and missile.guidance is not Guidance.DUMB:
        _resolve(world, missile, resolve_endgame(world.rng, target.alive))
        return True

    range_before = math.sqrt(px * px + py * py + pz * pz)
    missile.x += vx * dt
    missile.y += vy * dt
    missile.z += vz * dt
    missile.time_of_flight += dt

    qx = missile.x - (target.x + target.vx * dt)
    qy = missile.y - (target.y + target.vy * dt)
    qz = missile.z - (target.z + target.vz * dt)
    range_after = math.sqrt(qx * qx + qy * qy + qz * qz)
    if range_after >= range_before:
        missile.opening_time_s += dt
    else:
        missile.opening_time_s = 0.0

    if missile.opening_time_s >= OPENING_MISS_TIME_S:
        _resolve(world, missile, NO_KILL)
        return True
    if missile.time_of_flight > MAX_TIME_OF_FLIGHT_S:
        _resolve(world, missile, NO_KILL)
        return True
    if missile.z <= 0.0:
        _resolve(world, missile, NO_KILL)
        return True
    return False
