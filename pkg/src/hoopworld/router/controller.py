"""Hierarchical controllers that drive a world tick by tick.

``ComposedController`` runs the full stack (primitives, command machine,
router); with a zero router it degrades exactly to heuristic threshold
switching, which is also how that baseline is implemented.
``DirectExecutionController`` skips the intermediate entirely and hands the
dribble over to the pretrained shot policy on a value threshold.
"""

from __future__ import annotations

import numpy as np

from ..rewards import dribble_goal, gather_goal, pivot_indicator, shoot_goal
from ..transitions.train import shoot_value_input
from ..world import observe
from ..world.state import WorldState
from .compose import blend_actions, compose_action
from .state import DRIBBLE, GATHER, SHOOT, RouterState, one_hot, record_omega, reference_command_update


class ZeroRouter:
    """Router stand-in emitting exactly zero offsets."""

    act_dim = 3

    def mean(self, x: np.ndarray) -> np.ndarray:
        return np.zeros((len(x), 3), dtype=np.float32)


class ComposedController:
    def __init__(
        self,
        cfg,
        dribble_policy,
        gather_policy,
        shoot_policy,
        shoot_critic,
        shoot_task_head: int,
        router_policy=None,
        threshold: float = -1.0,
        hard_router=None,
    ):
        self.cfg = cfg
        self.dribble_policy = dribble_policy
        self.gather_policy = gather_policy
        self.shoot_policy = shoot_policy
        self.shoot_critic = shoot_critic
        self.shoot_task_head = shoot_task_head
        self.router_policy = router_policy if router_policy is not None else ZeroRouter()
        self.hard_router = hard_router
        self.threshold = threshold
        self.rs = RouterState()
        self.target_velocity = np.zeros(2)

    def reset(self, target_velocity: np.ndarray | None = None) -> None:
        self.rs = RouterState()
        if target_velocity is not None:
            self.target_velocity = np.asarray(target_velocity, dtype=float)

    def command_shoot(self) -> None:
        self.rs = reference_command_update(self.rs, True, -np.inf, self.threshold)

    def set_target_velocity(self, v: np.ndarray) -> None:
        self.target_velocity = np.asarray(v, dtype=float)

    def value(self, state: WorldState) -> float:
        x = shoot_value_input(state)[None]
        return float(self.shoot_critic.forward(x)[0][0, self.shoot_task_head])

    def action_collection(self, state: WorldState, prev: WorldState) -> np.ndarray:
        obs = observe(state, prev)
        xd = np.concatenate([obs, dribble_goal(state, self.target_velocity)])[None]
        xg = np.concatenate([obs, gather_goal(state)])[None]
        xs = np.concatenate([obs, shoot_goal(state, include_pivot=False)])[None]
        extra = np.array([[pivot_indicator(state)]], dtype=np.float32)
        a_dribble = self.dribble_policy.mean(xd.astype(np.float32))[0]
        a_gather = self.gather_policy.mean(xg.astype(np.float32))[0]
        if hasattr(self.shoot_policy, "extra_dim") and self.shoot_policy.extra_dim:
            a_shoot = self.shoot_policy.mean(xs.astype(np.float32), extra)[0]
        else:
            a_shoot = self.shoot_policy.mean(xs.astype(np.float32))[0]
        return np.stack([a_dribble, a_gather, a_shoot]).astype(float)

    def router_input(self, state: WorldState, prev: WorldState, include_command: bool = True) -> np.ndarray:
        obs = observe(state, prev)
        goal = shoot_goal(state, include_pivot=True)
        parts = [obs, goal]
        if include_command:
            parts.append(self.rs.command_vector)
        return np.concatenate(parts)

    def act(self, state: WorldState, prev: WorldState) -> tuple[np.ndarray, dict]:
        v_bar = self.value(state)
        self.rs = reference_command_update(
            self.rs, self.rs.shoot_requested, v_bar, self.threshold
        )
        collection = self.action_collection(state, prev)
        if self.hard_router is not None:
            x = self.router_input(state, prev, include_command=False)[None]
            idx = int(self.hard_router.greedy(x.astype(np.float32))[0])
            omega = one_hot(idx)
            action = blend_actions(omega, collection)
        else:
            x = self.router_input(state, prev)
            omega, action, _ = compose_action(
                self.router_policy, x, self.rs.command_vector, collection
            )
        self.rs = record_omega(self.rs, omega)
        diag = {
            "command": self.rs.command,
            "omega": list(self.rs.omega),
            "dominant": self.rs.dominant,
            "v_bar": v_bar,
        }
        return action, diag


class DirectExecutionController:
    """Dribble, then switch straight to the pretrained shot policy when its
    state value clears the threshold."""

    def __init__(self, cfg, dribble_policy, shoot_policy, shoot_critic, shoot_task_head, threshold):
        self.cfg = cfg
        self.dribble_policy = dribble_policy
        self.shoot_policy = shoot_policy
        self.shoot_critic = shoot_critic
        self.shoot_task_head = shoot_task_head
        self.threshold = threshold
        self.requested = False
        self.switched = False
        self.target_velocity = np.zeros(2)

    def reset(self, target_velocity: np.ndarray | None = None) -> None:
        self.requested = False
        self.switched = False
        if target_velocity is not None:
            self.target_velocity = np.asarray(target_velocity, dtype=float)

    def command_shoot(self) -> None:
        self.requested = True

    def set_target_velocity(self, v: np.ndarray) -> None:
        self.target_velocity = np.asarray(v, dtype=float)

    def value(self, state: WorldState) -> float:
        obs = observe(state, state)
        x = np.concatenate([obs, shoot_goal(state, include_pivot=False)])[None]
        return float(self.shoot_critic.forward(x)[0][0, self.shoot_task_head])

    def act(self, state: WorldState, prev: WorldState) -> tuple[np.ndarray, dict]:
        obs = observe(state, prev)
        v_bar = self.value(state)
        if self.requested and not self.switched and v_bar > self.threshold:
            self.switched = True
        if self.switched:
            x = np.concatenate([obs, shoot_goal(state, include_pivot=False)])[None]
            action = self.shoot_policy.mean(x.astype(np.float32))[0].astype(float)
            phase = SHOOT
        else:
            x = np.concatenate([obs, dribble_goal(state, self.target_velocity)])[None]
            action = self.dribble_policy.mean(x.astype(np.float32))[0].astype(float)
            phase = DRIBBLE
        return action, {"command": phase, "omega": None, "dominant": phase, "v_bar": v_bar}
