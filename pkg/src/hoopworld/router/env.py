"""Routing environment: the router acts, frozen primitives supply actions."""

from __future__ import annotations

import numpy as np

from ..tasks.base import SkillEnv
from ..tasks.gather import gather_task_reward
from ..tasks.shoot import shoot_task_reward
from ..world import ScenarioKind, relocalize, reset_scenario, step
from .compose import blend_actions, router_reward
from .state import RouterState, one_hot, record_omega, reference_command_update

EPISODE_CAP = 150
COMMAND_WINDOW = (10, 50)


class RouterEnv(SkillEnv):
    """Episodes start from dribbling states; a shoot command arrives at a
    random tick; the router blends the frozen primitives until release."""

    objective_names = ("task",)
    imitation_channels: dict = {}
    act_dim = 3

    def __init__(
        self,
        cfg,
        controller_factory,
        initial_pool=None,
        hard: bool = False,
        clip_bound: float = 1.0,
    ):
        super().__init__(cfg)
        self.controller = controller_factory()
        self.initial_pool = initial_pool
        self.hard = hard
        self.clip_bound = clip_bound
        self.command_tick = 0
        self._rewards: dict = {}
        self._info: dict = {}
        self._terminal = False
        self.discrete_actions = hard
        self.goal_dim = 9 if hard else 12  # shoot goal (+ command when soft)

    def reset(self, seed: int) -> None:
        rng = np.random.default_rng(seed)
        if self.initial_pool:
            idx = int(rng.integers(0, len(self.initial_pool)))
            radius = rng.uniform(self.cfg.ring_inner, self.cfg.ring_outer)
            ang = rng.uniform(-np.pi, np.pi)
            heading = rng.uniform(-np.pi, np.pi)
            self.state = relocalize(
                self.initial_pool[idx], radius * np.array([np.cos(ang), np.sin(ang)]), heading
            )
        else:
            self.state = reset_scenario(ScenarioKind.DRIBBLE_INIT, seed, self.cfg)
        self.prev_state = self.state
        self.episode_ticks = 0
        speed = rng.uniform(0.0, 4.0)
        ang = rng.uniform(-np.pi, np.pi)
        self.controller.reset(speed * np.array([np.cos(ang), np.sin(ang)]))
        self.command_tick = int(rng.integers(*COMMAND_WINDOW))
        self._rewards = {}
        self._info = {}
        self._terminal = False
        self._caught = False
        self._flight_ticks = 0

    def policy_input(self) -> np.ndarray:
        from ..world import observe

        obs = observe(self.state, self.prev_state)
        ctrl = self.controller
        from ..rewards import shoot_goal

        parts = [obs, shoot_goal(self.state, include_pivot=True)]
        if not self.hard:
            parts.append(ctrl.rs.command_vector)
        return np.concatenate(parts)

    def goal(self) -> np.ndarray:  # folded into policy_input
        return np.zeros(0)

    def world_step(self, router_action):
        ctrl = self.controller
        before = self.state
        if self.episode_ticks == self.command_tick:
            ctrl.command_shoot()
        v_bar = ctrl.value(before)
        ctrl.rs = reference_command_update(
            ctrl.rs, ctrl.rs.shoot_requested, v_bar, ctrl.threshold
        )
        collection = ctrl.action_collection(before, self.prev_state)
        if self.hard:
            omega = one_hot(int(router_action))
        else:
            omega = ctrl.rs.command_vector + np.asarray(router_action, dtype=float)
        action = blend_actions(omega, collection)
        after = step(before, action, self.cfg)
        ctrl.rs = record_omega(ctrl.rs, omega)

        r_gather, _ = gather_task_reward(after, self.cfg, v_bar, self.clip_bound)
        r_shoot = shoot_task_reward(before, after, self.cfg, traveling_violation=True)
        reward, ctrl.rs = router_reward(ctrl.rs, r_gather, r_shoot)
        self._rewards = {"task": float(reward)}

        if ctrl.rs.shoot_requested and after.ball.held:
            self._caught = True
        if after.shoot.released:
            self._flight_ticks += 1
        ball_gone = (
            float(np.linalg.norm(after.ball.position[:2] - after.agent.position)) > 3.0
            and not after.ball.held
            and not after.shoot.released
            and ctrl.rs.shoot_requested
        )
        self._terminal = bool(self._flight_ticks >= 10 or ball_gone)
        self._info = {
            "success": int(self._caught) if self._terminal or self.episode_done() else 0,
            "violation": 0,
        }
        self.prev_state = before
        self.state = after
        self.episode_ticks += 1
        return before, after

    def task_rewards(self, before, after) -> dict:
        return self._rewards

    def episode_done(self) -> bool:
        return self._terminal or self.episode_ticks >= EPISODE_CAP

    def info(self) -> dict:
        return self._info
