"""Catching task: receive a launched ball into a two-hand hold."""

from __future__ import annotations

import numpy as np

from ..imitation import BODY, HANDS
from ..rewards import catch_goal, catch_reward
from ..world import ScenarioKind, reset_scenario
from ..world.state import WorldState
from .base import SkillEnv

EPISODE_CAP = 60
HOLD_SUCCESS_TICKS = 15


class CatchEnv(SkillEnv):
    objective_names = ("imit_body", "imit_hand", "task")
    imitation_channels = {"imit_body": BODY, "imit_hand": HANDS}
    goal_dim = 10

    def __init__(self, cfg, episode_ticks: int = EPISODE_CAP):
        super().__init__(cfg)
        self.episode_cap = episode_ticks
        self.target = np.zeros(3)
        self._rewards: dict = {}
        self._info: dict = {}
        self._hold_streak = 0

    def reset(self, seed: int) -> None:
        self.state = reset_scenario(ScenarioKind.CATCH_LAUNCH, seed, self.cfg)
        self.prev_state = self.state
        self.episode_ticks = 0
        self._hold_streak = 0
        self.target = self._arrival_point(self.state)
        self._rewards = {}
        self._info = {}

    def _arrival_point(self, state: WorldState) -> np.ndarray:
        """Ballistic point of closest horizontal approach to the agent."""
        p = state.ball.position
        v = state.ball.velocity
        rel = p[:2] - state.agent.position
        v_xy = v[:2]
        speed_sq = float(v_xy @ v_xy)
        t = 0.0 if speed_sq < 1e-9 else max(0.0, -float(rel @ v_xy) / speed_sq)
        g = self.cfg.gravity
        return np.array(
            [p[0] + v[0] * t, p[1] + v[1] * t, p[2] + v[2] * t + 0.5 * g * t * t]
        )

    def goal(self) -> np.ndarray:
        return catch_goal(self.state, self.target)

    def on_step(self, before: WorldState, after: WorldState) -> WorldState:
        cfg = self.cfg
        r = catch_reward(
            after.palm_positions(),
            after.palm_normals(),
            np.stack(
                [h.fingertips_world(after.agent, cfg.fingertip_radius) for h in after.hands]
            ),
            after.ball.position,
            cfg.ball_radius,
            bool(after.pivot.traveling),
        )
        self._hold_streak = self._hold_streak + 1 if after.ball.held else 0
        self._rewards = {"task": float(r)}
        self._info = {
            "violation": int(after.pivot.traveling),
            "success": int(self._hold_streak >= HOLD_SUCCESS_TICKS),
        }
        return after

    def task_rewards(self, before, after) -> dict:
        return self._rewards

    def _ball_gone(self) -> bool:
        s = self.state
        dist = float(np.linalg.norm(s.ball.position[:2] - s.agent.position))
        grounded = s.ball.position[2] < self.cfg.ball_radius + 0.02 and abs(
            s.ball.velocity[2]
        ) < 0.5
        return (not s.ball.held) and (dist > 3.0 or grounded) and self.episode_ticks > 10

    def episode_done(self) -> bool:
        return (
            self._hold_streak >= HOLD_SUCCESS_TICKS
            or self._ball_gone()
            or self.episode_ticks >= self.episode_cap
        )

    def info(self) -> dict:
        return self._info
