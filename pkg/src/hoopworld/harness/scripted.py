"""Hand-written feedback controllers.

These serve three purposes: evaluation test doubles (an always-succeeds
oracle and an always-fails dud), demo fallbacks, and a competence ceiling
check for the learned pipeline.  The dribbler intercepts the ball at its
predicted apex and steers it toward a side station; the gatherer chases the
ball and clamps it two-handed; the shooter places the held ball along a
computed launch direction and throws with a guaranteed descent speed at the
rim.
"""

from __future__ import annotations

import numpy as np

from ..geom import rot2, wrap_angle
from ..world import ACTION_DIM, WorldConfig
from ..world.state import A_ACCEL, A_TURN, LEFT, RIGHT, WorldState, foot_slice, hand_slice

GRAV = 9.81


def apex_height(cfg: WorldConfig, z: float, vz: float) -> float:
    """Apex of the current rise, or of the post-bounce rise when falling."""
    if vz > 0:
        return z + vz * vz / (2.0 * GRAV)
    v_up = cfg.restitution * np.sqrt(vz * vz + 2.0 * GRAV * max(0.0, z - cfg.ball_radius))
    return cfg.ball_radius + v_up * v_up / (2.0 * GRAV)


def scripted_dribble(state: WorldState, target_velocity: np.ndarray, cfg: WorldConfig) -> np.ndarray:
    a = np.zeros(ACTION_DIM)
    ag = state.agent
    inv = rot2(-ag.heading)
    a[A_ACCEL] = np.clip(inv @ (np.asarray(target_velocity) - ag.velocity) * 0.8, -0.25, 0.25)

    hand = state.hands[RIGHT]
    hs = hand_slice(RIGHT)
    ball_rel = inv @ (state.ball.position[:2] - ag.position)
    palm_z = np.clip(
        apex_height(cfg, state.ball.position[2], state.ball.velocity[2])
        + cfg.ball_radius
        - 0.01,
        0.35,
        0.98,
    )
    tgt = np.array(
        [
            np.clip(ball_rel[0], *cfg.hand_forward_range),
            np.clip(ball_rel[1], *cfg.hand_lateral_range),
            palm_z,
        ]
    )
    a[hs.start : hs.start + 3] = np.clip((tgt - hand.offset) / cfg.hand_max_delta, -1, 1)

    station = np.array([0.28, -0.30])
    e = 2.5 * (station - ball_rel) + inv @ (ag.velocity - state.ball.velocity[:2])
    n = np.array([0.16 * e[0], 0.16 * e[1], -1.0])
    n /= np.linalg.norm(n)
    a[hs.start + 3] = np.clip(
        wrap_angle(np.arctan2(n[1], n[0]) - hand.yaw) / cfg.hand_max_turn, -1, 1
    )
    a[hs.start + 4] = np.clip(
        (np.arcsin(np.clip(n[2], -1, 1)) - hand.pitch) / cfg.hand_max_turn, -1, 1
    )
    a[hs.start + 5] = 1.0 if state.ball.velocity[2] > -1.0 else 0.0

    hl = hand_slice(LEFT)
    park = np.array([0.05, 0.5, 1.15])
    a[hl.start : hl.start + 3] = np.clip(
        (park - state.hands[LEFT].offset) / cfg.hand_max_delta, -1, 1
    )
    if np.linalg.norm(ag.velocity) > 0.3:
        phase = (state.tick % 16) < 8
        a[foot_slice(LEFT).start] = 1.0 if phase else 0.0
        a[foot_slice(RIGHT).start] = 0.0 if phase else 1.0
    return a


def scripted_gather(state: WorldState, cfg: WorldConfig) -> np.ndarray:
    """Chase the bouncing ball and clamp it between opposed palms."""
    a = np.zeros(ACTION_DIM)
    ag = state.agent
    inv = rot2(-ag.heading)
    ball_rel = inv @ (state.ball.position[:2] - ag.position)
    ball_v_rel = inv @ state.ball.velocity[:2]
    err = (ball_rel + 0.25 * ball_v_rel) - np.array([0.30, 0.0])
    v_des = inv @ (state.ball.velocity[:2] - ag.velocity) + 2.0 * err
    a[A_ACCEL] = np.clip(v_des * 0.8, -0.6, 0.6)
    bz = np.clip(state.ball.position[2], 0.3, 1.25)
    for side, lat in ((LEFT, 1.0), (RIGHT, -1.0)):
        hand = state.hands[side]
        hs = hand_slice(side)
        tgt = np.array(
            [
                np.clip(ball_rel[0], *cfg.hand_forward_range),
                np.clip(ball_rel[1] + lat * (cfg.ball_radius + 0.005), *cfg.hand_lateral_range),
                bz,
            ]
        )
        a[hs.start : hs.start + 3] = np.clip((tgt - hand.offset) / cfg.hand_max_delta, -1, 1)
        a[hs.start + 3] = np.clip(
            wrap_angle(-lat * np.pi / 2 - hand.yaw) / cfg.hand_max_turn, -1, 1
        )
        a[hs.start + 4] = np.clip((0.0 - hand.pitch) / cfg.hand_max_turn, -1, 1)
    return a


def solve_launch(cfg: WorldConfig, dist: float, hold_radius: float = 0.5, entry_deg: float = 47.0):
    """Launch elevation and speed for a rim-clearing descending arc."""
    theta = np.deg2rad(55.0)
    descent = 3.2
    vx = vz0 = 1.0
    for _ in range(4):
        d = max(0.5, dist - hold_radius * np.cos(theta))
        dh = cfg.hoop_height - (cfg.chest_height + hold_radius * np.sin(theta))
        vz0 = np.sqrt(descent * descent + 2.0 * GRAV * dh)
        t = (vz0 + descent) / GRAV
        vx = d / t
        theta = np.arctan2(vz0, vx)
        descent = max(3.2, np.tan(np.deg2rad(entry_deg)) * vx)
    speed = min(float(np.hypot(vx, vz0)), cfg.release_gain)
    return float(theta), speed


def scripted_shoot(state: WorldState, cfg: WorldConfig) -> np.ndarray:
    """From a held ball: brake, face the hoop, place, and throw."""
    a = np.zeros(ACTION_DIM)
    ag = state.agent
    inv = rot2(-ag.heading)
    hoop_rel = inv @ (state.hoop - ag.position)
    dist = float(np.linalg.norm(hoop_rel))
    hoop_dir = hoop_rel / max(dist, 1e-9)
    err_ang = float(np.arctan2(hoop_dir[1], hoop_dir[0]))
    a[A_TURN] = np.clip(err_ang * 2.0, -1, 1)
    a[A_ACCEL] = np.clip(inv @ (-ag.velocity) * 1.5, -0.3, 0.3)

    theta, speed = solve_launch(cfg, dist)
    launch = np.array(
        [np.cos(theta) * hoop_dir[0], np.cos(theta) * hoop_dir[1], np.sin(theta)]
    )
    ball_target = np.array([0.0, 0.0, cfg.chest_height]) + 0.5 * launch
    mid_target = ball_target - state.ball.attach_local

    raw = {}
    settled = True
    for side, lat in ((LEFT, 0.13), (RIGHT, -0.13)):
        hand = state.hands[side]
        tgt = np.array([mid_target[0], mid_target[1] + lat, mid_target[2]])
        d = tgt - hand.offset
        raw[side] = np.clip(d / cfg.hand_max_delta, -1, 1)
        if np.linalg.norm(d) > 0.003:
            settled = False
    avg = 0.5 * (raw[LEFT] + raw[RIGHT])
    for side in (LEFT, RIGHT):
        hs = hand_slice(side)
        a[hs.start : hs.start + 3] = avg + np.clip(raw[side] - avg, -0.15, 0.15)
    if abs(err_ang) > 0.01 or np.linalg.norm(ag.velocity) > 0.05:
        settled = False
    if settled:
        push = np.clip(speed / cfg.release_gain, 0.5001, 1.0)
        a[hand_slice(LEFT).start + 5] = push
        a[hand_slice(RIGHT).start + 5] = push
    return a


def scripted_chain(state: WorldState, cfg: WorldConfig, target_velocity, shoot_commanded: bool) -> np.ndarray:
    """Dribble until commanded, then gather and shoot."""
    if not shoot_commanded:
        return scripted_dribble(state, target_velocity, cfg)
    if state.ball.held:
        return scripted_shoot(state, cfg)
    if state.shoot.released:
        return np.zeros(ACTION_DIM)
    return scripted_gather(state, cfg)
