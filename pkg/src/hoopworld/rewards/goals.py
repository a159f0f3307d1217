"""Goal-vector builders, one layout per skill.

Goals are expressed in the agent's heading-aligned frame.  The pivot-foot
indicator is a single scalar (state / 2, giving -0.5 undefined, 0 left,
0.5 right, 1 either) appended only for the skills and training phases that
track traveling; checkpoint headers record each policy's goal dimension.
"""

from __future__ import annotations

import numpy as np

from ..geom import rot2, unit
from ..world.state import WorldState

GOAL_DIMS = {
    "dribble": 10,
    "shoot": 8,
    "shoot_adapted": 9,
    "pass": 9,
    "pass_adapted": 10,
    "catch": 10,
    "gather": 9,
    "gather_pass": 10,
    "locomotion": 4,
    "router": 9,
}


def _ball_block(state: WorldState) -> np.ndarray:
    rot = rot2(-state.agent.heading)
    rel = rot @ (state.ball.position[:2] - state.agent.position)
    vel = rot @ state.ball.velocity[:2]
    return np.array(
        [rel[0], rel[1], state.ball.position[2], vel[0], vel[1], state.ball.velocity[2]]
    )


def _rel_xy(state: WorldState, point_xy: np.ndarray) -> np.ndarray:
    return rot2(-state.agent.heading) @ (np.asarray(point_xy, dtype=float) - state.agent.position)


def pivot_indicator(state: WorldState) -> float:
    return state.pivot.pivot / 2.0


def velocity_command(state: WorldState, target_velocity: np.ndarray) -> np.ndarray:
    """Direction (unit, agent frame) plus magnitude."""
    local = rot2(-state.agent.heading) @ np.asarray(target_velocity, dtype=float)
    mag = float(np.linalg.norm(local))
    d = unit(local)
    return np.array([d[0], d[1], mag])


def dribble_goal(state: WorldState, target_velocity: np.ndarray) -> np.ndarray:
    return np.concatenate(
        [
            velocity_command(state, target_velocity),
            [float(state.dribble.can_dribble)],
            _ball_block(state),
        ]
    )


def shoot_goal(state: WorldState, include_pivot: bool = False) -> np.ndarray:
    parts = [_ball_block(state), _rel_xy(state, state.hoop)]
    if include_pivot:
        parts.append([pivot_indicator(state)])
    return np.concatenate(parts)


def pass_goal(
    state: WorldState, target: np.ndarray, include_pivot: bool = False
) -> np.ndarray:
    rel = _rel_xy(state, np.asarray(target, dtype=float)[:2])
    parts = [_ball_block(state), [rel[0], rel[1], float(target[2])]]
    if include_pivot:
        parts.append([pivot_indicator(state)])
    return np.concatenate(parts)


def catch_goal(state: WorldState, target: np.ndarray) -> np.ndarray:
    return pass_goal(state, target, include_pivot=True)


def gather_goal(state: WorldState, pass_target: np.ndarray | None = None) -> np.ndarray:
    """Gather goal: successor's aim (hoop or pass target) plus pivot flag."""
    if pass_target is None:
        parts = [_ball_block(state), _rel_xy(state, state.hoop), [pivot_indicator(state)]]
    else:
        rel = _rel_xy(state, np.asarray(pass_target, dtype=float)[:2])
        parts = [
            _ball_block(state),
            [rel[0], rel[1], float(pass_target[2])],
            [pivot_indicator(state)],
        ]
    return np.concatenate(parts)


def locomotion_goal(
    state: WorldState, target_velocity: np.ndarray, stance_mode: int
) -> np.ndarray:
    return np.concatenate(
        [velocity_command(state, target_velocity), [float(stance_mode)]]
    )
