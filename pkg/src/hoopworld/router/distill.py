"""Distillation of the hierarchical controller into a single network.

Online supervised regression: the student rolls out in the simulator (after
a teacher-driven warmup pass) while the hierarchical teacher labels every
visited state with its composite action.  If a student-driven pass loses
the ball too often, the next pass falls back to teacher-driven rollouts.
"""

from __future__ import annotations

import numpy as np

from ..net import Adam, GaussianPolicy
from ..world import ScenarioKind, relocalize, reset_scenario, step
from .state import RouterState, reference_command_update


class DistilledController:
    """Single-network controller with the same command interface."""

    def __init__(self, student: GaussianPolicy, value_fn, cfg, threshold: float = -1.0):
        self.student = student
        self.value_fn = value_fn
        self.cfg = cfg
        self.threshold = threshold
        self.rs = RouterState()
        self.target_velocity = np.zeros(2)

    def reset(self, target_velocity: np.ndarray | None = None) -> None:
        self.rs = RouterState()
        if target_velocity is not None:
            self.target_velocity = np.asarray(target_velocity, dtype=float)

    def command_shoot(self) -> None:
        self.rs = reference_command_update(self.rs, True, -np.inf, self.threshold)

    def set_target_velocity(self, v) -> None:
        self.target_velocity = np.asarray(v, dtype=float)

    def network_input(self, state, prev) -> np.ndarray:
        from ..rewards import shoot_goal
        from ..world import observe

        obs = observe(state, prev)
        return np.concatenate(
            [obs, shoot_goal(state, include_pivot=True), self.rs.command_vector]
        )

    def act(self, state, prev):
        v_bar = self.value_fn(state)
        self.rs = reference_command_update(
            self.rs, self.rs.shoot_requested, v_bar, self.threshold
        )
        x = self.network_input(state, prev)[None].astype(np.float32)
        action = self.student.mean(x)[0].astype(float)
        return action, {
            "command": self.rs.command,
            "omega": None,
            "dominant": self.rs.command,
            "v_bar": v_bar,
        }


def _distill_rollout(
    teacher,
    cfg,
    initial_pool,
    rng: np.random.Generator,
    seed: int,
    episodes: int,
    student: GaussianPolicy | None,
    noise: float = 0.05,
):
    """One data-collection pass; student-driven when a student is given."""
    xs, ys = [], []
    lost = 0
    for ep in range(episodes):
        ep_rng = np.random.default_rng(seed + ep)
        if initial_pool:
            idx = int(ep_rng.integers(0, len(initial_pool)))
            radius = ep_rng.uniform(cfg.ring_inner, cfg.ring_outer)
            ang = ep_rng.uniform(-np.pi, np.pi)
            state = relocalize(
                initial_pool[idx],
                radius * np.array([np.cos(ang), np.sin(ang)]),
                ep_rng.uniform(-np.pi, np.pi),
            )
        else:
            state = reset_scenario(ScenarioKind.DRIBBLE_INIT, seed + ep, cfg)
        prev = state
        speed = ep_rng.uniform(0.0, 4.0)
        d = ep_rng.uniform(-np.pi, np.pi)
        teacher.reset(speed * np.array([np.cos(d), np.sin(d)]))
        command_tick = int(ep_rng.integers(10, 50))
        for t in range(120):
            if t == command_tick:
                teacher.command_shoot()
            teacher_action, _ = teacher.act(state, prev)
            x = teacher.router_input(state, prev)
            xs.append(x)
            ys.append(teacher_action)
            if student is not None:
                xin = x[None].astype(np.float32)
                exec_action = student.mean(xin)[0].astype(float)
                exec_action += noise * rng.standard_normal(exec_action.shape)
            else:
                exec_action = teacher_action
            new_state = step(state, np.clip(exec_action, -1, 1), cfg)
            prev, state = state, new_state
            if state.shoot.released and t > command_tick:
                break
            if (
                float(np.linalg.norm(state.ball.position[:2] - state.agent.position)) > 3.0
                and not state.ball.held
            ):
                lost += 1
                break
    return np.array(xs, dtype=np.float32), np.array(ys, dtype=np.float32), lost / max(1, episodes)


def distill(
    teacher,
    cfg,
    initial_pool,
    hidden: tuple[int, ...],
    rng: np.random.Generator,
    seed: int,
    passes: int = 6,
    episodes_per_pass: int = 24,
    train_steps: int = 600,
    lr: float = 1e-3,
    holdout_fraction: float = 0.15,
) -> tuple[GaussianPolicy, dict]:
    """Compress the hierarchy into one network; returns (student, report)."""
    probe = reset_scenario(ScenarioKind.DRIBBLE_INIT, seed, cfg)
    teacher.reset(np.zeros(2))
    in_dim = len(teacher.router_input(probe, probe))
    student = GaussianPolicy(in_dim, 21, hidden, rng, final_scale=0.1)
    opt = Adam(student.net.params(), lr=lr)

    xs_all: list[np.ndarray] = []
    ys_all: list[np.ndarray] = []
    holdout = None
    report = {"passes": []}
    use_teacher = True
    for p in range(passes):
        xs, ys, lost_rate = _distill_rollout(
            teacher,
            cfg,
            initial_pool,
            rng,
            seed + 10_000 * (p + 1),
            episodes_per_pass,
            None if use_teacher else student,
        )
        if holdout is None:
            n_hold = max(1, int(len(xs) * holdout_fraction))
            holdout = (xs[:n_hold], ys[:n_hold])
            xs, ys = xs[n_hold:], ys[n_hold:]
        xs_all.append(xs)
        ys_all.append(ys)
        X = np.concatenate(xs_all)
        Y = np.concatenate(ys_all)
        for _ in range(train_steps):
            idx = rng.integers(0, len(X), size=min(512, len(X)))
            xb, yb = X[idx], Y[idx]
            pred, cache = student.net.forward(xb, need_cache=True)
            diff = pred - yb
            dy = (2.0 / diff.size) * diff
            grads, _ = student.net.backward(cache, dy)
            opt.step(grads)
        pred_h = student.net.forward(holdout[0])
        mse = float(np.mean((pred_h - holdout[1]) ** 2))
        report["passes"].append(
            {"pass": p, "samples": int(len(X)), "holdout_mse": mse, "lost_rate": lost_rate, "teacher_driven": use_teacher}
        )
        use_teacher = lost_rate > 0.5 if p > 0 else False
    report["holdout_mse"] = report["passes"][-1]["holdout_mse"]
    return student, report
