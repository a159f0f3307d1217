"""Gathering task: secure a live dribble into a two-hand hold, facing the aim.

The pose reward is shaped by the successor's normalized task value through a
pluggable provider (the transition trainer wires in the evolving adapted
critic; standalone use defaults to zero shaping).  Episodes start from
harvested dribbling states teleported into the ring around the hoop.
"""

from __future__ import annotations

import numpy as np

from ..geom import unit
from ..imitation import BODY, HANDS
from ..rewards import gather_goal, gather_pose_reward, gather_reward
from ..world import ScenarioKind, relocalize, reset_scenario
from ..world.state import WorldState
from .base import SkillEnv

EPISODE_CAP = 90
UNCONTROLLED_WINDOW = 40   # ticks the ball may stay out of control (1.3 s)
HOLD_SUCCESS_TICKS = 10
OUT_OF_COURT_PENALTY = -25.0


def gather_task_reward(
    after: WorldState, cfg, v_bar: float, clip_bound: float
) -> tuple[float, bool]:
    """Pose-plus-shaped-value reward for one transition; (reward, violation)."""
    violation = bool(after.body_contact or after.pivot.traveling)
    to_hoop = unit(after.hoop - after.agent.position)
    pose = gather_pose_reward(
        after.palm_positions(),
        after.palm_normals(),
        np.stack(
            [h.fingertips_world(after.agent, cfg.fingertip_radius) for h in after.hands]
        ),
        after.ball.position,
        after.agent.facing,
        to_hoop,
        cfg.ball_radius,
        bool(after.pivot.traveling),
    )
    return gather_reward(pose, v_bar, clip_bound, violation), violation


class GatherEnv(SkillEnv):
    objective_names = ("imit_body", "imit_hand", "task")
    imitation_channels = {"imit_body": BODY, "imit_hand": HANDS}
    goal_dim = 9

    def __init__(
        self,
        cfg,
        initial_pool=None,
        value_provider=None,
        clip_bound: float = 1.0,
        episode_ticks: int = EPISODE_CAP,
        easy_init_prob: float = 0.0,
    ):
        super().__init__(cfg)
        self.initial_pool = initial_pool
        self.value_provider = value_provider
        self.clip_bound = clip_bound
        self.episode_cap = episode_ticks
        self.easy_init_prob = easy_init_prob
        self._rewards: dict = {}
        self._info: dict = {}
        self._hold_streak = 0
        self._uncontrolled_streak = 0
        self._terminal = False

    def reset(self, seed: int) -> None:
        rng = np.random.default_rng(seed)
        if self.initial_pool:
            idx = int(rng.integers(0, len(self.initial_pool)))
            src = self.initial_pool[idx]
            radius = rng.uniform(self.cfg.ring_inner, self.cfg.ring_outer)
            ang = rng.uniform(-np.pi, np.pi)
            pos = radius * np.array([np.cos(ang), np.sin(ang)])
            heading = rng.uniform(-np.pi, np.pi)
            self.state = relocalize(src, pos, heading)
        else:
            self.state = reset_scenario(ScenarioKind.DRIBBLE_INIT, seed, self.cfg)
        if self.easy_init_prob > 0.0 and rng.uniform() < self.easy_init_prob:
            self._easy_ball(rng)
        self.prev_state = self.state
        self.episode_ticks = 0
        self._hold_streak = 0
        self._uncontrolled_streak = 0
        self._terminal = False
        self._rewards = {}
        self._info = {}

    def _easy_ball(self, rng: np.random.Generator) -> None:
        """Replace the inherited ball with a slow, waist-high toss just ahead
        of the agent, palms pre-spread around it (latch-discovery
        curriculum: a few centimeters of converging hand motion secure it)."""
        s = self.state
        cfg = self.cfg
        dist = rng.uniform(0.3, 0.45)
        facing = s.agent.facing
        s.ball.position = np.array(
            [
                s.agent.position[0] + dist * facing[0],
                s.agent.position[1] + dist * facing[1],
                rng.uniform(0.85, 1.1),
            ]
        )
        s.ball.velocity = np.array(
            [s.agent.velocity[0], s.agent.velocity[1], rng.uniform(0.0, 0.8)]
        )
        s.ball.held = False
        s.ball.release_cooldown = 0
        spread = cfg.ball_radius + rng.uniform(0.06, 0.12)
        for side, lat in ((0, spread), (1, -spread)):
            hand = s.hands[side]
            hand.offset = np.array([dist, lat, float(s.ball.position[2])])
            hand.yaw = -np.pi / 2 if side == 0 else np.pi / 2
            hand.pitch = rng.uniform(-0.2, 0.2)

    def goal(self) -> np.ndarray:
        return gather_goal(self.state)

    def _uncontrolled(self, state: WorldState) -> bool:
        if state.ball.held:
            return False
        dist = float(np.linalg.norm(state.ball.position[:2] - state.agent.position))
        grounded_dead = (
            state.ball.position[2] < self.cfg.ball_radius + 0.02
            and abs(state.ball.velocity[2]) < 0.5
        )
        return dist > 2.0 or grounded_dead

    def on_step(self, before: WorldState, after: WorldState) -> WorldState:
        cfg = self.cfg
        out_of_court = (
            float(np.linalg.norm(after.ball.position[:2] - after.hoop)) > cfg.court_radius
        )
        v_bar = 0.0
        if self.value_provider is not None:
            v_bar = float(self.value_provider(after))
        r, violation = gather_task_reward(after, cfg, v_bar, self.clip_bound)

        self._hold_streak = self._hold_streak + 1 if after.ball.held else 0
        self._uncontrolled_streak = (
            self._uncontrolled_streak + 1 if self._uncontrolled(after) else 0
        )
        self._terminal = False
        if out_of_court:
            r = OUT_OF_COURT_PENALTY
            self._terminal = True
        elif self._uncontrolled_streak >= UNCONTROLLED_WINDOW:
            self._terminal = True

        self._rewards = {"task": float(r)}
        self._info = {
            "violation": int(violation),
            "success": int(self._hold_streak >= HOLD_SUCCESS_TICKS),
        }
        return after

    def task_rewards(self, before, after) -> dict:
        return self._rewards

    def episode_done(self) -> bool:
        return self._terminal or self.episode_ticks >= self.episode_cap

    def info(self) -> dict:
        return self._info
