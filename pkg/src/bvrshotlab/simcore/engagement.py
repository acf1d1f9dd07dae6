"""Engagement driver: world construction, tick loop, and termination.

Both sides start in line-abreast walls on opposing CAP anchors 150 km
apart, blue facing north and red facing south. The world advances at a
fixed 0.1 s step until one side is wiped out or 30 simulated minutes
elapse. Any missile still in the air at termination is scored NO_KILL:
once a side is destroyed its missiles have lost support and the other
side's targets are already dead, and the clock cap is final.
"""

from __future__ import annotations

import math

from ..doe import SimCase
from ..rng import make_generator
from .behavior import Action, behavior_step
from .entities import (
    AircraftState,
    Behavior,
    Guidance,
    MissileState,
    RunSummary,
    ShotEvent,
    WorldState,
)
from .missile import BOOST_SPEED_MS, NO_KILL, missile_step
from .physics import M_PER_DEG_LON, bearing_deg, speed_of_sound, wrap180, wrap360
from .platforms import (
    RED_ACT_DIST_M,
    RED_PHILOSOPHY_PCT,
    RED_PLATFORM,
    RED_RANGE_FACTOR,
    RED_TRACK_RANGE_M,
    blue_platform,
)
from .wez import effective_detection_range, scan_detection_range, wez_max_range

DT_S = 0.1
MAX_TIME_S = 1800.0
CAP_SEPARATION_M = 150_000.0
EVAL_DELAY_MIN_S = 0.8
EVAL_DELAY_MAX_S = 1.2
ACCEL_MS2 = 8.0
MAX_CLIMB_ANGLE_DEG = 10.0
ALTITUDE_DEADBAND_M = 5.0


def build_world(case: SimCase, seed: int, run_id: str = "run") -> WorldState:
    world = WorldState(case, make_generator(seed), run_id)

    n_blue = 6 if case.blue_six_ship else 4
    blue = blue_platform(case.blue_concept)
    blue_spacing = case.blue_spacing_deg * M_PER_DEG_LON
    red_spacing = case.red_spacing_deg * M_PER_DEG_LON

    for i in range(n_blue):
        x = (i - (n_blue - 1) / 2.0) * blue_spacing
        ac = AircraftState(
            id=f"b{i}",
            side="blue",
            platform=blue,
            x=x,
            y=0.0,
            z=case.blue_alt_m,
            heading=0.0,
            speed=case.blue_cap_mach * speed_of_sound(case.blue_alt_m),
            missiles_left=blue.missile_count,
            rcs_db=blue.baseline_rcs_db + case.blue_rcs_delta_db,
            track_range_m=case.blue_track_range_m,
            act_dist_m=case.blue_missile_act_dist_m,
            philosophy_pct=case.blue_shot_philosophy_pct,
            range_factor=case.blue_missile_range_factor,
            maneuver_mach=case.blue_speed_mach,
            cap_mach=case.blue_cap_mach,
            cruise_alt_m=case.blue_alt_m,
            cmd_heading=0.0,
            cmd_mach=case.blue_cap_mach,
            cmd_alt_m=case.blue_alt_m,
            station_x=x,
            station_y=0.0,
        )
        ac.refresh_velocity()
        world.add_aircraft(ac)

    for i in range(4):
        x = (i - 1.5) * red_spacing
        ac = AircraftState(
            id=f"r{i}",
            side="red",
            platform=RED_PLATFORM,
            x=x,
            y=CAP_SEPARATION_M,
            z=case.red_alt_m,
            heading=180.0,
            speed=case.red_cap_mach * speed_of_sound(case.red_alt_m),
            missiles_left=RED_PLATFORM.missile_count,
            rcs_db=RED_PLATFORM.baseline_rcs_db,
            track_range_m=RED_TRACK_RANGE_M,
            act_dist_m=RED_ACT_DIST_M,
            philosophy_pct=RED_PHILOSOPHY_PCT,
            range_factor=RED_RANGE_FACTOR,
            maneuver_mach=case.red_speed_mach,
            cap_mach=case.red_cap_mach,
            cruise_alt_m=case.red_alt_m,
            cmd_heading=180.0,
            cmd_mach=case.red_cap_mach,
            cmd_alt_m=case.red_alt_m,
            station_x=x,
            station_y=CAP_SEPARATION_M,
            cap_sign=-1,  # red racetrack legs sweep south, toward blue
        )
        ac.refresh_velocity()
        world.add_aircraft(ac)

    # detection ranges are static per (sensor, target) pair
    for agent in world.aircraft:
        for enemy in world.enemies_of(agent.side):
            agent.track_range_on[enemy.id] = effective_detection_range(
                agent.track_range_m, enemy.rcs_db
            )
            agent.scan_range_on[enemy.id] = scan_detection_range(
                agent.track_range_m, enemy.rcs_db
            )
    return world


def _launch_missile(world: WorldState, shooter: AircraftState, target: AircraftState) -> None:
    dx = target.x - shooter.x
    dy = target.y - shooter.y
    dz = target.z - shooter.z
    dist = math.sqrt(dx * dx + dy * dy + dz * dz)
    event = ShotEvent(
        run_id=world.run_id,
        time_s=world.time,
        shooter_id=shooter.id,
        shooter_side=shooter.side,
        target_id=target.id,
        shooter_x=shooter.x,
        shooter_y=shooter.y,
        shooter_alt_m=shooter.z,
        shooter_heading_deg=shooter.heading,
        shooter_speed_ms=shooter.speed,
        target_x=target.x,
        target_y=target.y,
        target_alt_m=target.z,
        target_heading_deg=target.heading,
        target_speed_ms=target.speed,
        distance_m=dist,
        off_boresight_deg=wrap180(
            bearing_deg(shooter.x, shooter.y, target.x, target.y) - shooter.heading
        ),
        delta_heading_deg=wrap360(shooter.heading - target.heading),
        wez_rmax_m=wez_max_range(shooter, target, shooter.range_factor),
    )
    world.events.append(event)
    missile = MissileState(
        id=world.next_missile_id(),
        side=shooter.side,
        shooter_id=shooter.id,
        target_id=target.id,
        x=shooter.x,
        y=shooter.y,
        z=shooter.z,
        vx=BOOST_SPEED_MS * dx / dist,
        vy=BOOST_SPEED_MS * dy / dist,
        vz=BOOST_SPEED_MS * dz / dist,
        speed=BOOST_SPEED_MS,
        activation_distance_m=shooter.act_dist_m,
        event_index=len(world.events) - 1,
    )
    world.missiles.append(missile)
    shooter.missiles_left -= 1
    shooter.missiles_fired += 1


def _apply_action(world: WorldState, agent: AircraftState, action: Action) -> None:
    agent.behavior = action.behavior
    agent.committed_target = action.committed_target
    agent.cmd_heading = action.cmd_heading
    agent.cmd_mach = action.cmd_mach
    agent.cmd_alt_m = action.cmd_alt_m
    if action.fire_target_id is not None:
        _launch_missile(world, agent, world.by_id[action.fire_target_id])


def _advance_aircraft(agent: AircraftState, dt: float) -> None:
    if agent.behavior is Behavior.EVADE and agent.dash_time_left_s > 0.0:
        agent.dash_time_left_s -= dt

    # turn toward the commanded heading, rate-limited
    delta = wrap180(agent.cmd_heading - agent.heading)
    max_step = agent.platform.max_turn_rate_deg_s * dt
    if delta > max_step:
        delta = max_step
    elif delta < -max_step:
        delta = -max_step
    agent.heading = wrap360(agent.heading + delta)

    # accelerate toward the commanded Mach at the current altitude
    target_speed = agent.cmd_mach * speed_of_sound(agent.z)
    dv = target_speed - agent.speed
    max_dv = ACCEL_MS2 * dt
    if dv > max_dv:
        dv = max_dv
    elif dv < -max_dv:
        dv = -max_dv
    agent.speed += dv

    # climb or descend toward the commanded altitude, path-angle limited
    alt_error = agent.cmd_alt_m - agent.z
    vz = 0.0
    if abs(alt_error) > ALTITUDE_DEADBAND_M:
        vz_cap = agent.speed * math.sin(math.radians(MAX_CLIMB_ANGLE_DEG))
        vz = alt_error / dt
        if vz > vz_cap:
            vz = vz_cap
        elif vz < -vz_cap:
            vz = -vz_cap

    agent.refresh_velocity(vz)
    agent.x += agent.vx * dt
    agent.y += agent.vy * dt
    agent.z += agent.vz * dt


def run_engagement(
    case: SimCase, seed: int, case_index: int = 0, run_id: str | None = None
) -> tuple[list[ShotEvent], RunSummary]:
    """Run one engagement to termination. Pure in (case, seed, case_index)."""
    if run_id is None:
        run_id = f"c{case_index:03d}s{seed & 0xFFFF:05d}"
    world = build_world(case, seed, run_id)
    rng = world.rng

    ticks = int(round(MAX_TIME_S / DT_S))
    end_time = MAX_TIME_S
    for tick in range(ticks):
        world.time = tick * DT_S

        for agent in world.aircraft:
            if agent.alive and world.time >= agent.next_eval_s:
                _apply_action(world, agent, behavior_step(agent, world))
                agent.next_eval_s = world.time + rng.uniform(
                    EVAL_DELAY_MIN_S, EVAL_DELAY_MAX_S
                )

        if world.missiles:
            world.missiles = [
                m for m in world.missiles if not missile_step(world, m, DT_S)
            ]

        for agent in world.aircraft:
            if agent.alive:
                _advance_aircraft(agent, DT_S)

        if world.alive_count("blue") == 0 or world.alive_count("red") == 0:
            end_time = (tick + 1) * DT_S
            break

    # missiles still flying at termination can no longer score
    for missile in world.missiles:
        world.events[missile.event_index].outcome = NO_KILL
    world.missiles = []

    fired_blue = sum(a.missiles_fired for a in world.aircraft if a.side == "blue")
    fired_red = sum(a.missiles_fired for a in world.aircraft if a.side == "red")
    summary = RunSummary(
        run_id=run_id,
        case_index=case_index,
        seed=seed,
        blue_survivors=world.alive_count("blue"),
        red_survivors=world.alive_count("red"),
        missiles_fired_blue=fired_blue,
        missiles_fired_red=fired_red,
        end_time_s=end_time,
    )
    return world.events, summary
