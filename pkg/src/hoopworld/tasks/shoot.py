"""Shooting and passing tasks.

Both start from a held ball in the ring; the task reward pays hold-and-lift
shaping every tick and the arc-accuracy term once, at release resolution.
Episodes end at release, when the two-hand hold is lost for too long, or at
the frame caps.  During adaptation the pivot indicator rides the adapter's
extra goal input and traveling is penalized as a violation.
"""

from __future__ import annotations

import numpy as np

from ..imitation import FULL
from ..rewards import (
    POST_RELEASE,
    PRE_RELEASE,
    pass_goal,
    pass_reward,
    pivot_indicator,
    shoot_goal,
    shoot_reward,
)
from ..world import ScenarioKind, reset_scenario
from ..world.state import WorldState
from .base import SkillEnv

EPISODE_CAP = 60
MUST_RELEASE_BY = 40


def shoot_task_reward(
    before: WorldState, after: WorldState, cfg, traveling_violation: bool = False
) -> float:
    """Per-transition shot reward.

    Hold-and-lift shaping while holding; after the release, the arc term is
    paid every tick until the episode ends (otherwise milking the
    pre-release shaping strictly dominates ever letting go).
    """
    if traveling_violation and after.pivot.traveling:
        return -1.0
    if after.shoot.released:
        return shoot_reward(
            POST_RELEASE,
            ball_pos=after.ball.position,
            ball_vel=after.ball.velocity,
            release_height=after.shoot.release_height,
            hoop_xy=after.hoop,
            hoop_height=cfg.hoop_height,
            g=cfg.gravity,
        )
    return shoot_reward(
        PRE_RELEASE,
        palms=after.palm_positions(),
        normals=after.palm_normals(),
        fingertips=np.stack(
            [h.fingertips_world(after.agent, cfg.fingertip_radius) for h in after.hands]
        ),
        ball_pos=after.ball.position,
        lifting=after.shoot.lifting,
        ball_radius=cfg.ball_radius,
    )


class ShootEnv(SkillEnv):
    objective_names = ("imit_full", "task")
    imitation_channels = {"imit_full": FULL}
    goal_dim = 8

    def __init__(self, cfg, adapted: bool = False, initial_pool=None):
        super().__init__(cfg)
        self.adapted = adapted
        self.initial_pool = initial_pool
        self._rewards: dict = {}
        self._info: dict = {}

    def reset(self, seed: int) -> None:
        if self.initial_pool:
            rng = np.random.default_rng(seed)
            idx = int(rng.integers(0, len(self.initial_pool)))
            self.state = self.initial_pool[idx].copy()
            self.state.shoot.released = False
            self.state.shoot.release_height = 0.0
        else:
            self.state = reset_scenario(ScenarioKind.SHOOT_RING_INIT, seed, self.cfg)
        self.prev_state = self.state
        self.episode_ticks = 0
        self._rewards = {}
        self._info = {}

    def goal(self) -> np.ndarray:
        return shoot_goal(self.state, include_pivot=False)

    def extra_input(self) -> np.ndarray | None:
        if self.adapted:
            return np.array([pivot_indicator(self.state)], dtype=np.float32)
        return None

    def on_step(self, before: WorldState, after: WorldState) -> WorldState:
        cfg = self.cfg
        released_now = after.shoot.released and not before.shoot.released
        violation = self.adapted and after.pivot.traveling
        r = shoot_task_reward(before, after, cfg, traveling_violation=self.adapted)
        self._rewards = {"task": float(r)}
        self._info = {"violation": int(violation), "success": 0}
        if released_now:
            from ..rewards import projectile_hoop_point

            point = projectile_hoop_point(
                after.ball.position, after.ball.velocity, after.hoop, cfg.hoop_height, cfg.gravity
            )
            on_target = point.reachable and float(
                np.linalg.norm(point.point_xy - after.hoop)
            ) <= cfg.hoop_radius
            self._info["success"] = int(on_target)
        return after

    def task_rewards(self, before, after) -> dict:
        return self._rewards

    def episode_done(self) -> bool:
        if self.episode_ticks >= MUST_RELEASE_BY and not (
            self.state.ball.held or self.state.shoot.released
        ):
            return True
        return self.episode_ticks >= EPISODE_CAP

    def info(self) -> dict:
        return self._info


class PassEnv(ShootEnv):
    goal_dim = 9

    def __init__(self, cfg, adapted: bool = False, initial_pool=None):
        super().__init__(cfg, adapted=adapted, initial_pool=initial_pool)
        self.target = np.array([3.0, 0.0, 1.0])

    def reset(self, seed: int) -> None:
        super().reset(seed)
        rng = np.random.default_rng(seed + 17)
        ang = self.state.agent.heading + rng.uniform(-np.pi / 2, np.pi / 2)
        dist = rng.uniform(self.cfg.ring_inner, self.cfg.ring_outer)
        self.target = np.array(
            [
                self.state.agent.position[0] + dist * np.cos(ang),
                self.state.agent.position[1] + dist * np.sin(ang),
                rng.uniform(0.8, 1.1),
            ]
        )

    def goal(self) -> np.ndarray:
        return pass_goal(self.state, self.target, include_pivot=False)

    def on_step(self, before: WorldState, after: WorldState) -> WorldState:
        cfg = self.cfg
        released_now = after.shoot.released and not before.shoot.released
        violation = self.adapted and after.pivot.traveling
        if violation:
            r = -1.0
        elif after.shoot.released:
            r = pass_reward(
                POST_RELEASE,
                ball_pos=after.ball.position,
                ball_vel=after.ball.velocity,
                target=self.target,
                g=cfg.gravity,
            )
        else:
            r = pass_reward(
                PRE_RELEASE,
                palms=after.palm_positions(),
                normals=after.palm_normals(),
                fingertips=np.stack(
                    [h.fingertips_world(after.agent, cfg.fingertip_radius) for h in after.hands]
                ),
                ball_pos=after.ball.position,
                lifting=after.shoot.lifting,
                ball_radius=cfg.ball_radius,
            )
        self._rewards = {"task": float(r)}
        success = 0
        if released_now:
            from ..rewards import projectile_plane_points

            crossings = projectile_plane_points(
                after.ball.position, after.ball.velocity, float(self.target[2]), cfg.gravity
            )
            if crossings:
                d = min(float(np.linalg.norm(p[:2] - self.target[:2])) for p in crossings)
                success = int(d < 0.5)
        self._info = {"violation": int(violation), "success": success}
        return after
