"""Locomotion task: velocity tracking, or standing in place on a stance command.

The toy body has no articulated arms, so stance style terms are exercised as
library functions rather than driven by this environment; stance episodes
reward staying in place with a fixed style credit.
"""

from __future__ import annotations

import numpy as np

from ..imitation import BODY
from ..rewards import locomotion_goal, locomotion_reward
from ..world import ScenarioKind, reset_scenario
from .base import SkillEnv

EPISODE_TICKS = 240


class LocomotionEnv(SkillEnv):
    objective_names = ("imit_body", "task")
    imitation_channels = {"imit_body": BODY}
    goal_dim = 4

    def __init__(self, cfg, episode_ticks: int = EPISODE_TICKS):
        super().__init__(cfg)
        self.episode_cap = episode_ticks
        self.target_velocity = np.zeros(2)
        self.stance_mode = 0
        self.has_target = True
        self._rewards: dict = {}

    def reset(self, seed: int) -> None:
        rng = np.random.default_rng(seed)
        self.state = reset_scenario(ScenarioKind.DRIBBLE_INIT, seed, self.cfg)
        self.state.ball.position = np.array([50.0, 50.0, 0.12])  # park the ball away
        self.prev_state = self.state
        self.episode_ticks = 0
        self.has_target = rng.uniform() > 0.25
        if self.has_target:
            speed = rng.uniform(0.0, 5.0)
            ang = rng.uniform(-np.pi, np.pi)
            self.target_velocity = speed * np.array([np.cos(ang), np.sin(ang)])
            self.stance_mode = 0
        else:
            self.target_velocity = np.zeros(2)
            self.stance_mode = int(rng.integers(1, 4))
        self._rewards = {}

    def goal(self) -> np.ndarray:
        return locomotion_goal(self.state, self.target_velocity, self.stance_mode)

    def on_step(self, before, after):
        r = locomotion_reward(
            after.agent.velocity,
            self.target_velocity,
            style_reward=1.0,
            has_target=self.has_target,
        )
        self._rewards = {"task": float(r)}
        return after

    def task_rewards(self, before, after) -> dict:
        return self._rewards

    def episode_done(self) -> bool:
        return self.episode_ticks >= self.episode_cap

    def info(self) -> dict:
        return {}
