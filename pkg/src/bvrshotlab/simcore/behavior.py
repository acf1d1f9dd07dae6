"""Agent decision logic: sensing, target selection, firing, evasion.

Decisions happen at evaluation instants spaced 0.8 to 1.2 seconds apart
(drawn from the run's generator); between instants the last commands keep
steering the aircraft. Priority order is fixed: evade an inbound active
missile, else press the committed or nearest unclaimed contact, else hold
the CAP racetrack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .entities import AircraftState, Behavior, Guidance, MissileState, WorldState
from .physics import bearing_deg, wrap360
from .wez import wez_max_range

RWR_RANGE_M = 20_000.0
EVADE_FLOOR_M = 8_000.0
# racetrack legs run along the threat axis so patrols sweep toward the enemy
CAP_LEG_HALF_M = 30_000.0
CAP_CAPTURE_M = 2_000.0
# commit turns into engage when inside this multiple of the firing range
ENGAGE_RANGE_FACTOR = 1.2


@dataclass
class SenseResult:
    contacts: list[tuple[str, float]]  # (enemy id, range in meters)
    missile_warning: bool
    threat_missile_id: str | None


@dataclass
class Action:
    behavior: Behavior
    cmd_heading: float
    cmd_mach: float
    cmd_alt_m: float
    committed_target: str | None
    fire_target_id: str | None = None


def _range3d(a, b) -> float:
    dx = b.x - a.x
    dy = b.y - a.y
    dz = b.z - a.z
    return math.sqrt(dx * dx + dy * dy + dz * dz)


def sense(world: WorldState, agent: AircraftState) -> SenseResult:
    """Build the agent's tracklist and check for an inbound active missile.

    An enemy is held if it is inside scan range, or inside track range while
    being the agent's committed target (the track beam follows the commit).
    """
    contacts: list[tuple[str, float]] = []
    for enemy in world.aircraft:
        if enemy.side == agent.side or not enemy.alive:
            continue
        rng = _range3d(agent, enemy)
        if rng <= agent.scan_range_on[enemy.id] or (
            agent.committed_target == enemy.id and rng <= agent.track_range_on[enemy.id]
        ):
            contacts.append((enemy.id, rng))

    warning = False
    threat_id = None
    threat_range = math.inf
    for missile in world.missiles:
        if missile.guidance is not Guidance.ACTIVE or missile.target_id != agent.id:
            continue
        rng = _range3d(agent, missile)
        if rng <= RWR_RANGE_M and rng < threat_range:
            warning = True
            threat_id = missile.id
            threat_range = rng
    return SenseResult(contacts, warning, threat_id)


def fire_decision(world: WorldState, agent: AircraftState, target: AircraftState) -> bool:
    """Shoot when inside the philosophy fraction of the launch envelope.

    Holds fire while any friendly missile is still in flight against the
    same target.
    """
    rmax = wez_max_range(agent, target, agent.range_factor)
    if _range3d(agent, target) > (agent.philosophy_pct / 100.0) * rmax:
        return False
    for missile in world.missiles:
        if missile.side == agent.side and missile.target_id == target.id:
            return False
    return True


def _claimed_targets(world: WorldState, agent: AircraftState) -> set[str]:
    return {
        mate.committed_target
        for mate in world.aircraft
        if mate.side == agent.side
        and mate.alive
        and mate.id != agent.id
        and mate.committed_target is not None
    }


def _evade_action(world: WorldState, agent: AircraftState, threat_id: str) -> Action:
    threat = next(m for m in world.missiles if m.id == threat_id)
    run_heading = wrap360(bearing_deg(agent.x, agent.y, threat.x, threat.y) + 180.0)
    # dash on afterburner while the budget lasts, then hold maneuvering speed
    dash_mach = agent.platform.max_mach if agent.dash_time_left_s > 0.0 else agent.maneuver_mach
    return Action(
        Behavior.EVADE,
        run_heading,
        dash_mach,
        EVADE_FLOOR_M,
        agent.committed_target,  # keep the claim; the fight resumes after the dodge
    )


def _cap_action(agent: AircraftState) -> Action:
    wp_x = agent.station_x
    wp_y = agent.station_y + agent.cap_sign * CAP_LEG_HALF_M
    if math.hypot(wp_x - agent.x, wp_y - agent.y) < CAP_CAPTURE_M:
        agent.cap_sign = -agent.cap_sign
        wp_y = agent.station_y + agent.cap_sign * CAP_LEG_HALF_M
    return Action(
        Behavior.CAP,
        bearing_deg(agent.x, agent.y, wp_x, wp_y),
        agent.cap_mach,
        agent.cruise_alt_m,
        None,
    )


def behavior_step(agent: AircraftState, world: WorldState) -> Action:
    """One decision at an evaluation instant. Does not mutate commands."""
    sensed = sense(world, agent)

    if sensed.missile_warning:
        return _evade_action(world, agent, sensed.threat_missile_id)

    contacts = dict(sensed.contacts)

    # re-picked every evaluation: nearest contact no living teammate has claimed
    claimed = _claimed_targets(world, agent)
    target_id = None
    best_range = math.inf
    for enemy_id, rng in sensed.contacts:
        if enemy_id in claimed:
            continue
        if rng < best_range:
            best_range = rng
            target_id = enemy_id

    if target_id is None:
        return _cap_action(agent)

    target = world.by_id[target_id]
    dist = contacts[target_id]
    fire_range = (agent.philosophy_pct / 100.0) * wez_max_range(
        agent, target, agent.range_factor
    )
    state = Behavior.ENGAGE if dist <= ENGAGE_RANGE_FACTOR * fire_range else Behavior.COMMIT

    fire_id = None
    if (
        state is Behavior.ENGAGE
        and agent.missiles_left > 0
        and fire_decision(world, agent, target)
    ):
        fire_id = target_id

    return Action(
        state,
        bearing_deg(agent.x, agent.y, target.x, target.y),
        agent.maneuver_mach,
        agent.cruise_alt_m,
        target_id,
        fire_id,
    )
