"""Dribbling task: velocity-commanded navigation while keeping a legal dribble."""

from __future__ import annotations

import numpy as np

from ..imitation import BODY, HANDS
from ..rewards import dribble_goal, dribble_reward, nav_reward
from ..world import ScenarioKind, reset_scenario, soft_reset_ball
from ..world.state import WorldState
from .base import SkillEnv

EPISODE_TICKS = 300
BALL_ESCAPE_DIST = 2.5
ZERO_TARGET_PROB = 0.2
MAX_TARGET_SPEED = 4.0


class DribbleEnv(SkillEnv):
    objective_names = ("imit_body", "imit_hand", "nav", "dribble")
    imitation_channels = {"imit_body": BODY, "imit_hand": HANDS}
    goal_dim = 10

    def __init__(self, cfg, episode_ticks: int = EPISODE_TICKS):
        super().__init__(cfg)
        self.episode_cap = episode_ticks
        self.target_velocity = np.zeros(2)
        self._rewards: dict = {}
        self._info: dict = {}
        self._reset_counter = 0

    def reset(self, seed: int) -> None:
        rng = np.random.default_rng(seed)
        self.state = reset_scenario(ScenarioKind.DRIBBLE_INIT, seed, self.cfg)
        self.prev_state = self.state
        self.episode_ticks = 0
        if rng.uniform() < ZERO_TARGET_PROB:
            self.target_velocity = np.zeros(2)
        else:
            speed = rng.uniform(0.0, MAX_TARGET_SPEED)
            ang = rng.uniform(-np.pi, np.pi)
            self.target_velocity = speed * np.array([np.cos(ang), np.sin(ang)])
        self._rewards = {}
        self._info = {}

    def goal(self) -> np.ndarray:
        return dribble_goal(self.state, self.target_velocity)

    def _bounce_died(self, after: WorldState) -> bool:
        """Ball no longer bouncing high enough to dribble."""
        if after.ball.held:
            return False
        z = float(after.ball.position[2])
        vz = float(after.ball.velocity[2])
        if z > 0.4:
            return False
        g = -self.cfg.gravity
        if vz > 0:
            apex = z + vz * vz / (2.0 * g)
        else:
            v_up = self.cfg.restitution * np.sqrt(
                vz * vz + 2.0 * g * max(0.0, z - self.cfg.ball_radius)
            )
            apex = self.cfg.ball_radius + v_up * v_up / (2.0 * g)
        return apex < 0.4

    def on_step(self, before: WorldState, after: WorldState) -> WorldState:
        cfg = self.cfg
        escape = (
            float(np.linalg.norm(after.ball.position[:2] - after.agent.position))
            > BALL_ESCAPE_DIST
        )
        violation = after.body_contact or escape or self._bounce_died(after)
        n_plus_delta = after.dribble.n_plus - before.dribble.n_plus
        n_minus_delta = after.dribble.n_minus - before.dribble.n_minus

        r_nav = nav_reward(after.agent.velocity, self.target_velocity)
        r_drb = dribble_reward(
            after.palm_positions(),
            after.palm_normals(),
            np.stack([h.fingertips_world(after.agent, cfg.fingertip_radius) for h in after.hands]),
            after.ball.position,
            float(after.ball.velocity[2]),
            after.dribble,
            violation,
            cfg.reference_height,
            cfg.restitution,
            cfg.gravity,
            cfg.ball_radius,
        )
        self._rewards = {"nav": r_nav, "dribble": r_drb}
        self._info = {
            "n_plus_delta": n_plus_delta,
            "n_minus_delta": n_minus_delta,
            "violation": int(violation),
        }
        if violation:
            self._reset_counter += 1
            after = soft_reset_ball(after, 0x5EED + 31 * self._reset_counter, cfg)
        return after

    def task_rewards(self, before, after) -> dict:
        return self._rewards

    def episode_done(self) -> bool:
        return self.episode_ticks >= self.episode_cap

    def info(self) -> dict:
        return self._info
