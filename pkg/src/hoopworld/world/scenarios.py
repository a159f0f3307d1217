"""Scenario initializers.

Each generator is deterministic in its seed.  The hoop sits at the world
origin; scenario geometry (ring radii, launch arcs, flight-time windows)
comes straight from the configured constants.
"""

from __future__ import annotations

import enum

import numpy as np

from ..geom import heading_vector, rot2, unit, wrap_angle
from ..rules import PivotTracker
from .config import WorldConfig
from .sim import step
from .state import ACTION_DIM, WorldState, hold_pose, make_state


class ScenarioKind(enum.Enum):
    DRIBBLE_INIT = "dribble"
    SHOOT_RING_INIT = "shoot_ring"
    CATCH_LAUNCH = "catch_launch"
    REBOUND_LAUNCH = "rebound_launch"
    FROM_STATE = "from_state"


class ScenarioError(RuntimeError):
    pass


HOOP = np.zeros(2)


def reset_scenario(
    kind: ScenarioKind,
    seed: int,
    cfg: WorldConfig,
    state: WorldState | None = None,
) -> WorldState:
    if kind is ScenarioKind.FROM_STATE:
        if state is None:
            raise ScenarioError("FROM_STATE requires a state")
        return state.copy()
    rng = np.random.default_rng(seed)
    if kind is ScenarioKind.DRIBBLE_INIT:
        return _dribble_init(rng, cfg)
    if kind is ScenarioKind.SHOOT_RING_INIT:
        return _shoot_ring_init(rng, cfg)
    if kind is ScenarioKind.CATCH_LAUNCH:
        return _catch_launch(rng, cfg)
    if kind is ScenarioKind.REBOUND_LAUNCH:
        return _rebound_launch(rng, cfg)
    raise ScenarioError(f"unknown scenario kind: {kind}")


def _ring_position(rng: np.random.Generator, cfg: WorldConfig) -> np.ndarray:
    radius = rng.uniform(cfg.ring_inner, cfg.ring_outer)
    angle = rng.uniform(-np.pi, np.pi)
    return HOOP + radius * heading_vector(angle)


def _dribble_init(rng: np.random.Generator, cfg: WorldConfig) -> WorldState:
    pos = _ring_position(rng, cfg)
    heading = rng.uniform(-np.pi, np.pi)
    dist = rng.uniform(0.5, 0.8)
    facing = heading_vector(heading)
    ball = np.array(
        [pos[0] + dist * facing[0], pos[1] + dist * facing[1], cfg.reference_height]
    )
    return make_state(cfg, pos, heading, HOOP, ball)


def _shoot_ring_init(rng: np.random.Generator, cfg: WorldConfig) -> WorldState:
    pos = _ring_position(rng, cfg)
    to_hoop = float(np.arctan2(HOOP[1] - pos[1], HOOP[0] - pos[0]))
    heading = wrap_angle(to_hoop + rng.uniform(-np.deg2rad(20.0), np.deg2rad(20.0)))
    state = make_state(cfg, pos, heading, HOOP, np.zeros(3))
    hold_pose(state, cfg)
    return state


def _catch_launch(rng: np.random.Generator, cfg: WorldConfig) -> WorldState:
    pos = _ring_position(rng, cfg)
    heading = rng.uniform(-np.pi, np.pi)

    arc = rng.uniform(-np.pi / 3.0, np.pi / 3.0)
    launch_dir = heading_vector(wrap_angle(heading + arc))
    launch_dist = rng.uniform(cfg.ring_inner, cfg.ring_outer)
    origin = np.array(
        [
            pos[0] + launch_dist * launch_dir[0],
            pos[1] + launch_dist * launch_dir[1],
            rng.uniform(0.8, 1.1),
        ]
    )

    disc_r = 0.5 * np.sqrt(rng.uniform(0.0, 1.0))
    disc_a = rng.uniform(-np.pi, np.pi)
    target = np.array(
        [
            pos[0] + disc_r * np.cos(disc_a),
            pos[1] + disc_r * np.sin(disc_a),
            cfg.reference_height + rng.uniform(-0.1, 0.5),
        ]
    )
    flight = rng.uniform(0.3, 0.83)
    velocity = ballistic_velocity(origin, target, flight, cfg.gravity)
    return make_state(cfg, pos, heading, HOOP, origin, ball_velocity=velocity)


def ballistic_velocity(
    origin: np.ndarray, target: np.ndarray, flight_time: float, gravity: float
) -> np.ndarray:
    """Initial velocity so a gravity-only flight reaches target at flight_time."""
    g = np.array([0.0, 0.0, gravity])
    return (target - origin - 0.5 * g * flight_time * flight_time) / flight_time


def _rebound_launch(
    rng: np.random.Generator, cfg: WorldConfig, max_attempts: int = 50
) -> WorldState:
    for _ in range(max_attempts):
        launch_xy = _ring_position(rng, cfg)
        origin = np.array([launch_xy[0], launch_xy[1], rng.uniform(1.5, 3.0)])
        rim_r = rng.uniform(0.35 * cfg.hoop_radius, cfg.hoop_radius)
        rim_a = rng.uniform(-np.pi, np.pi)
        target = np.array(
            [
                HOOP[0] + rim_r * np.cos(rim_a),
                HOOP[1] + rim_r * np.sin(rim_a),
                cfg.hoop_height,
            ]
        )
        horiz = rng.uniform(1.5, 3.0)
        dist_xy = float(np.linalg.norm(target[:2] - origin[:2]))
        flight = dist_xy / horiz
        velocity = ballistic_velocity(origin, target, flight, cfg.gravity)

        trace = _fly(origin, velocity, cfg, max_ticks=150)
        fall_tick = _fall_tick(trace, cfg.hoop_height)
        if fall_tick is None or fall_tick < 20:
            continue
        ball_pos, ball_vel = trace[fall_tick - 20]
        fall_pos, fall_vel = trace[fall_tick]
        approach = unit(fall_vel[:2])
        if not approach.any():
            continue
        offset_a = rng.uniform(-np.pi / 3.0, np.pi / 3.0)
        offset_dir = rot2(offset_a) @ approach
        dist = rng.uniform(0.2, 1.0)
        agent_pos = fall_pos[:2] + dist * offset_dir
        heading = float(
            np.arctan2(fall_pos[1] - agent_pos[1], fall_pos[0] - agent_pos[0])
        )
        return make_state(
            cfg, agent_pos, heading, HOOP, ball_pos, ball_velocity=ball_vel
        )
    raise ScenarioError("rebound launch: no feasible trajectory found")


def _fly(
    origin: np.ndarray, velocity: np.ndarray, cfg: WorldConfig, max_ticks: int
) -> list[tuple[np.ndarray, np.ndarray]]:
    """Roll an untouched ball through the real integrator, one entry per tick."""
    # park the agent far from the flight path so hands never interfere
    state = make_state(
        cfg, origin[:2] + np.array([50.0, 50.0]), np.pi, HOOP, origin, ball_velocity=velocity
    )
    idle = np.zeros(ACTION_DIM)
    trace = [(state.ball.position.copy(), state.ball.velocity.copy())]
    for _ in range(max_ticks):
        state = step(state, idle, cfg)
        trace.append((state.ball.position.copy(), state.ball.velocity.copy()))
        if state.ball.position[2] < cfg.ball_radius + 0.01 and len(trace) > 5:
            break
    return trace


def _fall_tick(trace, hoop_height: float) -> int | None:
    """First tick where the ball crosses down through the rim plane."""
    for i in range(1, len(trace)):
        z_prev = trace[i - 1][0][2]
        z_cur = trace[i][0][2]
        if z_prev > hoop_height >= z_cur and trace[i][1][2] < 0.0:
            return i
    return None


def relocalize(
    state: WorldState, new_position: np.ndarray, new_heading: float
) -> WorldState:
    """Teleport a state to a new pose, preserving all local dynamics.

    Every world-frame quantity (velocities, ball offset, foot anchors,
    recorded pivot contacts) is rotated and translated with the agent, so
    the relocated state behaves identically up to the global transform.
    """
    s = state.copy()
    d_theta = new_heading - s.agent.heading
    rot = rot2(d_theta)
    old_pos = s.agent.position.copy()

    def move_xy(p: np.ndarray) -> np.ndarray:
        return new_position + rot @ (p - old_pos)

    s.agent.position = np.asarray(new_position, dtype=float).copy()
    s.agent.heading = wrap_angle(new_heading)
    s.agent.velocity = rot @ s.agent.velocity
    for foot in s.feet:
        foot.anchor = move_xy(foot.anchor)
        foot.yaw = wrap_angle(foot.yaw + d_theta)
    bxy = move_xy(s.ball.position[:2])
    s.ball.position = np.array([bxy[0], bxy[1], s.ball.position[2]])
    bv = rot @ s.ball.velocity[:2]
    s.ball.velocity = np.array([bv[0], bv[1], s.ball.velocity[2]])

    contacts = {}
    for key, (x, y) in s.pivot.contacts.items():
        moved = move_xy(np.array([x, y]))
        contacts[key] = (float(moved[0]), float(moved[1]))
    s.pivot = PivotTracker(
        pivot=s.pivot.pivot,
        contacts=contacts,
        first_contact_tick=s.pivot.first_contact_tick,
        prev_contact=s.pivot.prev_contact,
        traveling=s.pivot.traveling,
    )
    return s
