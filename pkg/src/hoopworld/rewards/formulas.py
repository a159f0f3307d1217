"""Reward formulas.

Every function here is pure over plain geometry: palm positions/normals and
fingertip sets are passed as world-frame arrays, the ball as a position (and
velocity where a projectile matters).  Exponential-form terms live in (0, 1];
violation branches return exactly -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..rules import DribbleTracker

PRE_RELEASE = "pre_release"
POST_RELEASE = "post_release"


def _clamp01(x: float) -> float:
    return min(1.0, max(0.0, x))


def nav_reward(v: np.ndarray, v_target: np.ndarray) -> float:
    """Velocity-tracking reward with error scaled by the target speed."""
    v = np.asarray(v, dtype=float)
    v_target = np.asarray(v_target, dtype=float)
    scale = max(1.0, float(v_target @ v_target))
    err = v - v_target
    return float(np.exp(-2.0 / scale * float(err @ err)))


def select_hand(palms: np.ndarray, ball_pos: np.ndarray) -> int:
    """Index of the palm nearest the ball; ties go to the left hand."""
    d = np.linalg.norm(np.asarray(palms, dtype=float) - np.asarray(ball_pos, dtype=float), axis=1)
    return 0 if d[0] <= d[1] else 1


def hand_reward(
    palms: np.ndarray,
    normals: np.ndarray,
    ball_pos: np.ndarray,
    can_dribble: int,
    ball_radius: float,
) -> float:
    """Single-hand reach/facing reward for the palm nearest the ball.

    When a dribble is pending the palm is pulled to surface contact with
    its normal at the ball center; after a dribble it only needs to face
    the ball (projection point error, squared and more tolerant).
    """
    k = select_hand(palms, ball_pos)
    palm = np.asarray(palms[k], dtype=float)
    normal = np.asarray(normals[k], dtype=float)
    ball_pos = np.asarray(ball_pos, dtype=float)
    if can_dribble:
        err = float(np.linalg.norm(palm + ball_radius * normal - ball_pos))
        return float(np.exp(-2.0 * err))
    a = max(0.0, float((ball_pos - palm) @ normal))
    err = float(np.linalg.norm(palm + a * normal - ball_pos))
    return float(np.exp(-5.0 * err * err))


def ball_speed_reward(
    vz_ball: float, h_ball: float, h_ref: float, e: float, g: float
) -> float:
    """Vertical-speed adequacy: can the ball rebound to the reference height?"""
    if vz_ball > 0.0:
        radicand = -2.0 * g * (h_ref - h_ball)
    else:
        radicand = -2.0 * g * (h_ref / (e * e) - h_ball)
    if radicand <= 0.0:
        return 1.0
    v_target = float(np.sqrt(radicand))
    return min(1.0, abs(vz_ball / v_target))


def fingers_reward(points: np.ndarray, ball_pos: np.ndarray, ball_radius: float) -> float:
    """Surface-contact reward over one hand's fingertip-plus-palm set."""
    d = np.linalg.norm(np.asarray(points, dtype=float) - np.asarray(ball_pos, dtype=float), axis=1)
    total = float(np.sum(np.abs(d - ball_radius)))
    return float(np.exp(-10.0 * total))


def dribble_reward(
    palms: np.ndarray,
    normals: np.ndarray,
    fingertips: np.ndarray,
    ball_pos: np.ndarray,
    ball_vz: float,
    tracker: DribbleTracker,
    violation: bool,
    h_ref: float,
    e: float,
    g: float,
    ball_radius: float,
) -> float:
    """Composite dribble reward; -1 on any violation."""
    if violation:
        return -1.0
    r_hand = hand_reward(palms, normals, ball_pos, tracker.can_dribble, ball_radius)
    r_sp = ball_speed_reward(ball_vz, float(ball_pos[2]), h_ref, e, g)
    value = 0.6 * r_hand + 0.4 * r_sp
    if tracker.i_dribble:
        k = select_hand(palms, ball_pos)
        r_f = fingers_reward(fingertips[k], ball_pos, ball_radius)
        value += 0.5 * (0.2 + 0.8 * r_f)
    return float(value)


def hands_reward(
    palms: np.ndarray, normals: np.ndarray, ball_pos: np.ndarray, ball_radius: float
) -> float:
    """Two-hand reach reward: both palms at surface contact, facing the ball."""
    palms = np.asarray(palms, dtype=float)
    normals = np.asarray(normals, dtype=float)
    ball_pos = np.asarray(ball_pos, dtype=float)
    total = 0.0
    for k in (0, 1):
        total += float(np.linalg.norm(palms[k] + ball_radius * normals[k] - ball_pos))
    return float(np.exp(-2.5 * total))


def hold_reward(fingertips: np.ndarray, ball_pos: np.ndarray, ball_radius: float) -> float:
    """Surface-contact reward over both hands' fingertip sets."""
    pts = np.asarray(fingertips, dtype=float).reshape(-1, 3)
    d = np.linalg.norm(pts - np.asarray(ball_pos, dtype=float), axis=1)
    total = float(np.sum(np.abs(d - ball_radius)))
    return float(np.exp(-20.0 * total))


@dataclass(frozen=True)
class ProjectilePoint:
    """A reward anchor on a gravity-only flight path.

    ``point_xy`` is the planar anchor; ``point`` the full 3D anchor (equal
    to the plane crossing when reachable, else the flight apex).
    """

    point_xy: np.ndarray
    point: np.ndarray
    reachable: bool


def _apex(pos: np.ndarray, vel: np.ndarray, g: float) -> np.ndarray:
    t = max(0.0, -float(vel[2]) / g)
    return np.array(
        [
            pos[0] + vel[0] * t,
            pos[1] + vel[1] * t,
            pos[2] + vel[2] * t + 0.5 * g * t * t,
        ]
    )


def projectile_hoop_point(
    ball_pos: np.ndarray,
    ball_vel: np.ndarray,
    hoop_xy: np.ndarray,
    hoop_height: float,
    g: float = -9.81,
) -> ProjectilePoint:
    """Descending crossing of the rim plane, or the apex when out of reach."""
    pos = np.asarray(ball_pos, dtype=float)
    vel = np.asarray(ball_vel, dtype=float)
    vz = float(vel[2])
    disc = vz * vz - 2.0 * g * (float(pos[2]) - hoop_height)
    if disc >= 0.0:
        t_down = (-vz - np.sqrt(disc)) / g
        if t_down >= 0.0:
            point = np.array(
                [pos[0] + vel[0] * t_down, pos[1] + vel[1] * t_down, hoop_height]
            )
            return ProjectilePoint(point[:2].copy(), point, True)
    apex = _apex(pos, vel, g)
    return ProjectilePoint(apex[:2].copy(), apex, False)


def projectile_plane_points(
    ball_pos: np.ndarray, ball_vel: np.ndarray, plane_height: float, g: float = -9.81
) -> list[np.ndarray]:
    """All future crossings (either travel direction) of a horizontal plane."""
    pos = np.asarray(ball_pos, dtype=float)
    vel = np.asarray(ball_vel, dtype=float)
    vz = float(vel[2])
    disc = vz * vz - 2.0 * g * (float(pos[2]) - plane_height)
    if disc < 0.0:
        return []
    root = float(np.sqrt(disc))
    points = []
    for t in sorted(((-vz - root) / g, (-vz + root) / g)):
        if t >= 0.0:
            points.append(
                np.array([pos[0] + vel[0] * t, pos[1] + vel[1] * t, plane_height])
            )
    return points


def shoot_reward(
    phase: str,
    *,
    palms: np.ndarray | None = None,
    normals: np.ndarray | None = None,
    fingertips: np.ndarray | None = None,
    ball_pos: np.ndarray | None = None,
    ball_vel: np.ndarray | None = None,
    lifting: bool = False,
    release_height: float = 0.0,
    hoop_xy: np.ndarray | None = None,
    hoop_height: float = 3.05,
    ball_radius: float = 0.12,
    g: float = -9.81,
) -> float:
    """Shot reward: hold-and-lift before release, arc accuracy after."""
    if phase == PRE_RELEASE:
        value = 0.5 * hands_reward(palms, normals, ball_pos, ball_radius)
        if lifting:
            value += hold_reward(fingertips, ball_pos, ball_radius)
        return float(value)
    if phase == POST_RELEASE:
        anchor = projectile_hoop_point(ball_pos, ball_vel, hoop_xy, hoop_height, g)
        hoop_point = np.array([hoop_xy[0], hoop_xy[1], hoop_height])
        if anchor.reachable:
            dist = float(np.linalg.norm(anchor.point_xy - np.asarray(hoop_xy, dtype=float)))
        else:
            dist = float(np.linalg.norm(anchor.point - hoop_point))
        return float(release_height / hoop_height + np.exp(-0.25 * dist))
    raise ValueError(f"unknown shot phase: {phase}")


def pass_reward(
    phase: str,
    *,
    ball_pos: np.ndarray | None = None,
    ball_vel: np.ndarray | None = None,
    target: np.ndarray | None = None,
    palms: np.ndarray | None = None,
    normals: np.ndarray | None = None,
    fingertips: np.ndarray | None = None,
    lifting: bool = False,
    ball_radius: float = 0.12,
    g: float = -9.81,
) -> float:
    """Pass reward; the post-release anchor is the nearer crossing of the
    target-height plane, from either travel direction."""
    if phase == PRE_RELEASE:
        value = 0.5 * hands_reward(palms, normals, ball_pos, ball_radius)
        if lifting:
            value += hold_reward(fingertips, ball_pos, ball_radius)
        return float(value)
    if phase != POST_RELEASE:
        raise ValueError(f"unknown shot phase: {phase}")
    target = np.asarray(target, dtype=float)
    if target[2] < 0.0:
        raise ValueError("pass target below ground")
    crossings = projectile_plane_points(ball_pos, ball_vel, float(target[2]), g)
    if crossings:
        dist = min(
            float(np.linalg.norm(p[:2] - target[:2])) for p in crossings
        )
    else:
        apex = _apex(np.asarray(ball_pos, dtype=float), np.asarray(ball_vel, dtype=float), g)
        dist = float(np.linalg.norm(apex - target))
    return float(np.exp(-0.25 * dist))


def paired_hands_error(
    palms: np.ndarray, normals: np.ndarray, ball_pos: np.ndarray, ball_radius: float
) -> float:
    """Mean two-hand surface-target error (the slow-saturating error term)."""
    palms = np.asarray(palms, dtype=float)
    normals = np.asarray(normals, dtype=float)
    ball_pos = np.asarray(ball_pos, dtype=float)
    total = 0.0
    for k in (0, 1):
        total += float(np.linalg.norm(palms[k] + ball_radius * normals[k] - ball_pos))
    return 0.5 * total


def paired_hands_reward(
    palms: np.ndarray, normals: np.ndarray, ball_pos: np.ndarray, ball_radius: float
) -> float:
    """Two-scale hand reward: stays informative for large reach errors."""
    e_hands = paired_hands_error(palms, normals, ball_pos, ball_radius)
    return float(
        0.3 * np.exp(-e_hands) + 0.7 * hands_reward(palms, normals, ball_pos, ball_radius)
    )


def catch_reward(
    palms: np.ndarray,
    normals: np.ndarray,
    fingertips: np.ndarray,
    ball_pos: np.ndarray,
    ball_radius: float,
    traveling: bool,
) -> float:
    value = 0.5 * paired_hands_reward(palms, normals, ball_pos, ball_radius)
    value += hold_reward(fingertips, ball_pos, ball_radius)
    return float(value - (1.0 if traveling else 0.0))


def orient_reward(facing: np.ndarray, to_target: np.ndarray) -> float:
    """Facing-error reward; sharp near alignment, flat near opposite."""
    f = np.asarray(facing, dtype=float)
    t = np.asarray(to_target, dtype=float)
    cos_theta = float(np.clip(f @ t, -1.0, 1.0))
    angle = abs(float(np.arccos(cos_theta)))
    return float(np.exp(-4.0 * (angle / np.pi) ** 3))


def gather_pose_reward(
    palms: np.ndarray,
    normals: np.ndarray,
    fingertips: np.ndarray,
    ball_pos: np.ndarray,
    facing: np.ndarray,
    target_dir: np.ndarray,
    ball_radius: float,
    traveling: bool,
) -> float:
    value = 0.3 * paired_hands_reward(palms, normals, ball_pos, ball_radius)
    value += 0.2 * orient_reward(facing, target_dir)
    value += hold_reward(fingertips, ball_pos, ball_radius)
    return float(value - (1.0 if traveling else 0.0))


def gather_reward(
    pose_reward: float, v_bar_shoot: float, v: float, violation: bool
) -> float:
    """Pose reward shaped by the successor's clipped normalized value."""
    if violation:
        return -1.0
    return float(pose_reward + 0.25 * np.clip(v_bar_shoot, -v, v))


def locomotion_reward(
    v: np.ndarray, v_target: np.ndarray, style_reward: float, has_target: bool
) -> float:
    if has_target:
        return nav_reward(v, v_target)
    speed_sq = float(np.asarray(v, dtype=float) @ np.asarray(v, dtype=float))
    return float(1.0 + 0.2 * np.exp(-speed_sq) + 0.8 * style_reward)


@dataclass(frozen=True)
class ArmPoseInput:
    """Abstract arm stance: per-side vertical angles and palm positions.

    Angles are in [-pi/2, pi/2]; positive raises the arm.  The toy body has
    no articulated arms, so these inputs are provided by the caller.
    """

    theta_upper: np.ndarray   # (2,) left/right
    theta_lower: np.ndarray   # (2,)
    palms: np.ndarray         # (2, 3)


STANCE_MODES = ("block", "screen", "defend")


def stance_style_reward(arms: ArmPoseInput, mode: str) -> float:
    """Arm-stretch stance reward for block / screen / defend poses.

    Each bracketed ratio is clamped to [0, 1] so the composite stays in the
    documented range.
    """
    tu = np.asarray(arms.theta_upper, dtype=float)
    tl = np.asarray(arms.theta_lower, dtype=float)
    if mode == "block":
        lower = max(_clamp01(tl[k] / (0.16 * np.pi)) for k in (0, 1))
        upper = max(_clamp01((tu[k] + 0.212 * np.pi) / (0.376 * np.pi)) for k in (0, 1))
        return 0.25 * lower + 0.75 * upper
    if mode == "screen":
        palm_gap = float(np.linalg.norm(arms.palms[0] - arms.palms[1]))
        close = _clamp01((0.5 - palm_gap) / 0.3)
        down = min(
            _clamp01((0.4 * np.pi - theta) / (0.8 * np.pi))
            for theta in (tu[0], tu[1], tl[0], tl[1])
        )
        return 0.25 * close + 0.75 * down
    if mode == "defend":
        return min(
            _clamp01((0.5 * np.pi - abs(tu[k])) / (0.334 * np.pi)) for k in (0, 1)
        )
    raise ValueError(f"unknown stance mode: {mode}")
