"""Fixed-timestep world dynamics.

One control tick advances four physics substeps.  The agent body follows
commanded planar acceleration and turn rate (semi-implicit Euler); hand and
foot effectors track bounded per-tick offsets; the free ball follows the
exact constant-gravity update per substep (so per-tick velocity change is
exactly gravity / control_hz), bounces with vertical restitution and
horizontal per-bounce damping, and can collide with the rim wire.

Hand interaction model:

- push: while a palm is within ``push_range`` of the ball surface and its
  push command is positive, the ball is accelerated along the palm normal.
- hold: latches when both palms are within ``hold_engage_dist`` of the
  ball surface with opposing normals; while held the ball rides the palm
  midpoint with a heading-fixed attach offset.
- release: a push command above ``hold_release_push`` throws the ball along
  the chest-to-ball direction with speed proportional to the push; palms
  separating beyond ``hold_release_separation`` drop the ball instead.

Dribble detection runs only across free-flight ticks (a held ball cannot
be dribbled); pivot/traveling automata run every tick.
"""

from __future__ import annotations

import math

import numpy as np

from ..geom import heading_vector, rot2, unit, wrap_angle
from ..rules import (
    foot_movement_detection,
    pivot_traveling_update,
    update_dribble_state,
)
from .config import WorldConfig
from .state import (
    ACTION_DIM,
    A_ACCEL,
    A_TURN,
    LEFT,
    RIGHT,
    WorldState,
    foot_slice,
    hand_slice,
)

OBS_FRAME_DIM = 37
OBS_DIM = 2 * OBS_FRAME_DIM


def clamp_action(action: np.ndarray) -> np.ndarray:
    """Validate and clamp a raw action to its documented bounds."""
    a = np.asarray(action, dtype=float)
    if a.shape != (ACTION_DIM,):
        raise ValueError(f"action must have shape ({ACTION_DIM},), got {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("action contains non-finite components")
    out = np.clip(a, -1.0, 1.0)
    for side in (LEFT, RIGHT):
        h = hand_slice(side)
        out[h.start + 5] = min(max(out[h.start + 5], 0.0), 1.0)  # push in [0, 1]
    return out


def _hand_world(hand, px: float, py: float, ch: float, sh: float):
    """Palm position and normal as plain floats in the world frame."""
    ox, oy, oz = hand.offset
    wx = px + ch * ox - sh * oy
    wy = py + sh * ox + ch * oy
    cp = math.cos(hand.pitch)
    lx, ly = cp * math.cos(hand.yaw), cp * math.sin(hand.yaw)
    nx = ch * lx - sh * ly
    ny = sh * lx + ch * ly
    return wx, wy, oz, nx, ny, math.sin(hand.pitch)


def step(state: WorldState, action: np.ndarray, cfg: WorldConfig) -> WorldState:
    """Advance one control tick; pure in (state, action, cfg)."""
    a = clamp_action(action)
    s = state.copy()
    dt = cfg.physics_dt
    n_sub = cfg.physics_substeps

    held_before = s.ball.held
    vz_before = float(s.ball.velocity[2])
    ball_z_before = float(s.ball.position[2])

    accel_local = a[A_ACCEL] * cfg.max_accel
    turn_rate = float(a[A_TURN]) * cfg.max_turn_rate
    hand_deltas = []
    for side in (LEFT, RIGHT):
        h = a[hand_slice(side)]
        hand_deltas.append(
            (
                h[0:3] * (cfg.hand_max_delta / n_sub),
                h[3:5] * (cfg.hand_max_turn / n_sub),
                float(h[5]),
            )
        )

    # Lift/plant transitions resolve once, at the start of the tick.
    for side in (LEFT, RIGHT):
        foot = s.feet[side]
        want_lift = a[foot_slice(side)][0] > 0.5
        if want_lift and foot.planted:
            foot.lift = cfg.foot_lift_height
        elif not want_lift and not foot.planted:
            foot.lift = 0.0

    body_contact = False
    released_this_tick = False
    release_z = s.shoot.release_height
    agent = s.agent
    ball = s.ball
    R = cfg.ball_radius

    for _ in range(n_sub):
        ca, sa = math.cos(agent.heading), math.sin(agent.heading)
        ax = ca * accel_local[0] - sa * accel_local[1]
        ay = sa * accel_local[0] + ca * accel_local[1]
        vx = agent.velocity[0] + ax * dt
        vy = agent.velocity[1] + ay * dt
        speed = math.sqrt(vx * vx + vy * vy)
        if speed > cfg.max_speed:
            scale = cfg.max_speed / speed
            vx *= scale
            vy *= scale
        agent.velocity[0] = vx
        agent.velocity[1] = vy
        agent.position[0] += vx * dt
        agent.position[1] += vy * dt
        agent.heading = wrap_angle(agent.heading + turn_rate * dt)
        ca, sa = math.cos(agent.heading), math.sin(agent.heading)
        px, py = agent.position[0], agent.position[1]

        for side in (LEFT, RIGHT):
            hand = s.hands[side]
            d_off, d_ang, _push = hand_deltas[side]
            off = hand.offset
            off[0] = min(max(off[0] + d_off[0], cfg.hand_forward_range[0]), cfg.hand_forward_range[1])
            off[1] = min(max(off[1] + d_off[1], cfg.hand_lateral_range[0]), cfg.hand_lateral_range[1])
            off[2] = min(max(off[2] + d_off[2], cfg.hand_height_range[0]), cfg.hand_height_range[1])
            hand.yaw = wrap_angle(hand.yaw + d_ang[0])
            hand.pitch = min(max(hand.pitch + d_ang[1], -0.5 * math.pi), 0.5 * math.pi)

        foot_speed_cap = 4.0 * dt
        for side in (LEFT, RIGHT):
            foot = s.feet[side]
            fx, fy = foot.anchor[0], foot.anchor[1]
            if foot.planted:
                gx, gy = fx - px, fy - py
                dist = math.sqrt(gx * gx + gy * gy)
                if dist > cfg.foot_reach:
                    k = cfg.foot_reach / dist
                    foot.anchor[0] = px + gx * k
                    foot.anchor[1] = py + gy * k
            else:
                lateral = cfg.foot_stance_lateral if side == LEFT else -cfg.foot_stance_lateral
                sx = float(a[foot_slice(side)][1]) * cfg.foot_step_max
                sy = lateral + float(a[foot_slice(side)][2]) * cfg.foot_step_max
                tx = px + ca * sx - sa * sy
                ty = py + sa * sx + ca * sy
                mx, my = tx - fx, ty - fy
                d = math.sqrt(mx * mx + my * my)
                if d > foot_speed_cap:
                    k = foot_speed_cap / d
                    mx *= k
                    my *= k
                foot.anchor[0] = fx + mx
                foot.anchor[1] = fy + my
                foot.yaw = agent.heading

        lw = _hand_world(s.hands[LEFT], px, py, ca, sa)
        rw = _hand_world(s.hands[RIGHT], px, py, ca, sa)
        bx, by, bz = ball.position

        if ball.held:
            mx = 0.5 * (lw[0] + rw[0])
            my = 0.5 * (lw[1] + rw[1])
            mz = 0.5 * (lw[2] + rw[2])
            ox, oy, oz = ball.attach_local
            nx = mx + ca * ox - sa * oy
            ny = my + sa * ox + ca * oy
            nz = mz + oz
            ball.velocity[0] = (nx - bx) / dt
            ball.velocity[1] = (ny - by) / dt
            ball.velocity[2] = (nz - bz) / dt
            ball.position[0] = nx
            ball.position[1] = ny
            ball.position[2] = nz

            max_push = max(hand_deltas[LEFT][2], hand_deltas[RIGHT][2])
            if max_push > cfg.hold_release_push:
                dx = nx - px
                dy = ny - py
                dz = nz - cfg.chest_height
                norm = math.sqrt(dx * dx + dy * dy + dz * dz)
                if norm < 1e-9:
                    dx, dy, dz = 0.5 * ca, 0.5 * sa, 0.866
                    norm = 1.0
                kick = cfg.release_gain * max_push / norm
                ball.velocity[0] += kick * dx
                ball.velocity[1] += kick * dy
                ball.velocity[2] += kick * dz
                _release(ball)
                released_this_tick = True
                release_z = nz
            else:
                surf_l = _surf_dist(lw, nx, ny, nz, R)
                surf_r = _surf_dist(rw, nx, ny, nz, R)
                if max(surf_l, surf_r) > cfg.hold_release_separation:
                    _release(ball)
                    released_this_tick = True
                    release_z = nz
        else:
            for side, hw in ((LEFT, lw), (RIGHT, rw)):
                push = hand_deltas[side][2]
                if push > cfg.push_dead_zone and _surf_dist(hw, bx, by, bz, R) < cfg.push_range:
                    strength = (push - cfg.push_dead_zone) / (1.0 - cfg.push_dead_zone)
                    k = strength * cfg.push_accel * dt
                    ball.velocity[0] += k * hw[3]
                    ball.velocity[1] += k * hw[4]
                    ball.velocity[2] += k * hw[5]

            # exact constant-gravity flight over one substep
            ball.position[0] += ball.velocity[0] * dt
            ball.position[1] += ball.velocity[1] * dt
            ball.position[2] += ball.velocity[2] * dt + 0.5 * cfg.gravity * dt * dt
            ball.velocity[2] += cfg.gravity * dt

            _resolve_rim(ball, s.hoop, cfg)

            if ball.position[2] < R and ball.velocity[2] < 0.0:
                ball.position[2] = 2.0 * R - ball.position[2]
                ball.velocity[2] = -cfg.restitution * ball.velocity[2]
                ball.velocity[0] *= cfg.ball_ground_friction
                ball.velocity[1] *= cfg.ball_ground_friction

            if ball.release_cooldown == 0:
                bx, by, bz = ball.position
                surf_l = _surf_dist(lw, bx, by, bz, R)
                surf_r = _surf_dist(rw, bx, by, bz, R)
                if max(surf_l, surf_r) < cfg.hold_engage_dist:
                    n_dot = lw[3] * rw[3] + lw[4] * rw[4] + lw[5] * rw[5]
                    if n_dot < cfg.hold_normal_dot:
                        mx = 0.5 * (lw[0] + rw[0])
                        my = 0.5 * (lw[1] + rw[1])
                        mz = 0.5 * (lw[2] + rw[2])
                        gx, gy = bx - mx, by - my
                        ball.attach_local[0] = ca * gx + sa * gy
                        ball.attach_local[1] = -sa * gx + ca * gy
                        ball.attach_local[2] = bz - mz
                        ball.held = True

        if not body_contact:
            bx, by, bz = ball.position
            gx, gy = bx - px, by - py
            if (
                math.sqrt(gx * gx + gy * gy) < R + agent.body_radius
                and bz - R < cfg.body_height
            ):
                surf_l = _surf_dist(lw, bx, by, bz, R)
                surf_r = _surf_dist(rw, bx, by, bz, R)
                if min(surf_l, surf_r) >= cfg.palm_guard_range:
                    body_contact = True

    s.tick = state.tick + 1
    held_after = s.ball.held
    if s.ball.release_cooldown > 0:
        s.ball.release_cooldown -= 1

    if not held_before and not held_after:
        s.dribble = update_dribble_state(
            s.dribble, vz_before, float(s.ball.velocity[2])
        )

    flags, tracker = foot_movement_detection(
        s.pivot, s.foot_vertices(cfg.foot_half_length), s.tick
    )
    _, s.pivot = pivot_traveling_update(tracker, held_after, flags, s.tick)

    s.shoot.lifting = bool(
        held_after and float(s.ball.position[2]) > ball_z_before + 1e-9
    )
    if released_this_tick:
        s.shoot.release_height = release_z
        s.shoot.released = True
    s.body_contact = body_contact
    return s


def _surf_dist(hw, bx: float, by: float, bz: float, radius: float) -> float:
    dx, dy, dz = hw[0] - bx, hw[1] - by, hw[2] - bz
    return math.sqrt(dx * dx + dy * dy + dz * dz) - radius


def _release(ball) -> None:
    ball.held = False
    ball.attach_local[:] = 0.0
    ball.release_cooldown = 3


def _resolve_rim(ball, hoop: np.ndarray, cfg: WorldConfig) -> None:
    """Bounce the ball off the rim wire (a horizontal circle)."""
    rx = ball.position[0] - hoop[0]
    ry = ball.position[1] - hoop[1]
    d_xy = math.sqrt(rx * rx + ry * ry)
    if d_xy < 1e-9 or abs(ball.position[2] - cfg.hoop_height) > 2.0 * cfg.ball_radius:
        return
    qx = hoop[0] + cfg.hoop_radius * rx / d_xy
    qy = hoop[1] + cfg.hoop_radius * ry / d_xy
    nx = ball.position[0] - qx
    ny = ball.position[1] - qy
    nz = ball.position[2] - cfg.hoop_height
    dist = math.sqrt(nx * nx + ny * ny + nz * nz)
    if dist >= cfg.ball_radius or dist < 1e-9:
        return
    nx, ny, nz = nx / dist, ny / dist, nz / dist
    approach = ball.velocity[0] * nx + ball.velocity[1] * ny + ball.velocity[2] * nz
    if approach >= 0.0:
        return
    k = (1.0 + cfg.rim_restitution) * approach
    ball.velocity[0] -= k * nx
    ball.velocity[1] -= k * ny
    ball.velocity[2] -= k * nz
    ball.position[0] = qx + nx * cfg.ball_radius
    ball.position[1] = qy + ny * cfg.ball_radius
    ball.position[2] = cfg.hoop_height + nz * cfg.ball_radius


def detect_invalid_contact(state: WorldState, cfg: WorldConfig) -> bool:
    """Ball overlaps the agent body with neither palm anywhere near it.

    A palm within ``palm_guard_range`` of the ball surface marks the ball
    as actively played and exempts the contact.
    """
    ball = state.ball
    gap_xy = ball.position[:2] - state.agent.position
    if float(np.linalg.norm(gap_xy)) >= cfg.ball_radius + state.agent.body_radius:
        return False
    if ball.position[2] - cfg.ball_radius >= cfg.body_height:
        return False
    palms = state.palm_positions()
    surf = np.linalg.norm(palms - ball.position, axis=1) - cfg.ball_radius
    return float(np.min(surf)) >= cfg.palm_guard_range


def detect_field_goal(prev: WorldState, cur: WorldState, cfg: WorldConfig) -> bool:
    """Swept ball segment crossed the rim plane downward inside the hoop."""
    if prev.ball.held or cur.ball.held:
        return False
    z0 = float(prev.ball.position[2])
    z1 = float(cur.ball.position[2])
    h = cfg.hoop_height
    if not (z0 > h >= z1):
        return False
    frac = (z0 - h) / (z0 - z1)
    xy = prev.ball.position[:2] + frac * (cur.ball.position[:2] - prev.ball.position[:2])
    return float(np.linalg.norm(xy - cur.hoop)) <= cfg.hoop_radius


def soft_reset_ball(state: WorldState, seed: int, cfg: WorldConfig) -> WorldState:
    """Re-place the ball at rest in front of the agent after a violation."""
    rng = np.random.default_rng(seed)
    dist = rng.uniform(0.5, 0.8)
    s = state.copy()
    facing = heading_vector(s.agent.heading)
    s.ball.position = np.array(
        [
            s.agent.position[0] + dist * facing[0],
            s.agent.position[1] + dist * facing[1],
            cfg.reference_height,
        ]
    )
    s.ball.velocity = np.zeros(3)
    s.ball.held = False
    s.ball.attach_local = np.zeros(3)
    s.ball.release_cooldown = 0
    s.rng_cursor += 1
    return s


def observe(state: WorldState, history: WorldState | None = None) -> np.ndarray:
    """Two-frame observation in the current heading-aligned agent frame.

    The previous frame comes first; on the first tick the current frame is
    duplicated.  All planar quantities are expressed relative to the
    current agent position and heading, so jointly translating and yawing
    every entity leaves the observation unchanged.
    """
    if history is None:
        history = state
    ref = state.agent
    out = np.empty(OBS_DIM)
    _frame_block(history, ref.position[0], ref.position[1], ref.heading, out[:OBS_FRAME_DIM])
    _frame_block(state, ref.position[0], ref.position[1], ref.heading, out[OBS_FRAME_DIM:])
    return out


def _frame_block(frame: WorldState, rx: float, ry: float, rh: float, out: np.ndarray) -> None:
    c, s = math.cos(rh), math.sin(rh)
    agent = frame.agent
    dx, dy = agent.position[0] - rx, agent.position[1] - ry
    dh = agent.heading - rh
    vx, vy = agent.velocity
    out[0] = c * dx + s * dy
    out[1] = -s * dx + c * dy
    out[2] = math.cos(dh)
    out[3] = math.sin(dh)
    out[4] = c * vx + s * vy
    out[5] = -s * vx + c * vy
    i = 6
    pxa, pya = agent.position[0], agent.position[1]
    ca, sa = math.cos(agent.heading), math.sin(agent.heading)
    for hand in frame.hands:
        wx, wy, wz, nx, ny, nz = _hand_world(hand, pxa, pya, ca, sa)
        gx, gy = wx - rx, wy - ry
        out[i] = c * gx + s * gy
        out[i + 1] = -s * gx + c * gy
        out[i + 2] = wz
        out[i + 3] = c * nx + s * ny
        out[i + 4] = -s * nx + c * ny
        out[i + 5] = nz
        i += 6
    for foot in frame.feet:
        fc, fs = math.cos(foot.yaw), math.sin(foot.yaw)
        hx, hy = fc * 0.1, fs * 0.1
        for vx_, vy_ in ((foot.anchor[0] + hx, foot.anchor[1] + hy), (foot.anchor[0] - hx, foot.anchor[1] - hy)):
            gx, gy = vx_ - rx, vy_ - ry
            out[i] = c * gx + s * gy
            out[i + 1] = -s * gx + c * gy
            i += 2
        out[i] = foot.lift
        out[i + 1] = 1.0 if foot.planted else 0.0
        i += 2
    ball = frame.ball
    gx, gy = ball.position[0] - rx, ball.position[1] - ry
    out[i] = c * gx + s * gy
    out[i + 1] = -s * gx + c * gy
    out[i + 2] = ball.position[2]
    bvx, bvy = ball.velocity[0], ball.velocity[1]
    out[i + 3] = c * bvx + s * bvy
    out[i + 4] = -s * bvx + c * bvy
    out[i + 5] = ball.velocity[2]
    out[i + 6] = 1.0 if ball.held else 0.0
