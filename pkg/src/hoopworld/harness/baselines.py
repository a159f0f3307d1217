"""Alternative composition strategies evaluated against the full system.

- DirectExecution: dribble handed straight to the pretrained shot policy at
  a grid-searched value threshold; no intermediate.
- NoAdapt: an intermediate gather trained against the frozen pretrained
  critic, handing off to the unadapted shot policy.
- SequentialChaining: one policy trained from harvested dribbling states
  with mixed gather-then-shoot objectives.
- HeuristicSwitch: the frozen primitives under threshold switching (the
  zero-router path of the composed controller).
- HardRouter: a softmax one-hot router with no reference-command guidance.
"""

from __future__ import annotations

import numpy as np

from ..imitation import FULL
from ..net import GaussianPolicy, MultiHeadCritic
from ..ppo import PPOConfig, PPOLearner, fixed_objectives
from ..rewards import catch_reward, shoot_goal
from ..router import ComposedController, DirectExecutionController, ZeroRouter
from ..tasks import ShootEnv, train_skill
from ..tasks.shoot import shoot_task_reward
from ..world.state import WorldState
from .evaluate import evaluate_catch_rate

BASELINE_KINDS = (
    "DirectExecution",
    "NoAdapt",
    "SequentialChaining",
    "HardRouter",
    "HeuristicSwitch",
)

THRESHOLD_GRID = [round(-1.0 + 0.1 * k, 1) for k in range(11)]  # -1.0 .. 0.0


class SeqChainEnv(ShootEnv):
    """Single-policy mixed objective: catch shaping until the first hold,
    shot shaping afterward, from harvested dribbling states."""

    goal_dim = 9

    def __init__(self, cfg, initial_pool=None):
        super().__init__(cfg, adapted=False, initial_pool=None)
        self.pool = initial_pool
        self._ever_held = False

    def reset(self, seed: int) -> None:
        from ..world import ScenarioKind, relocalize, reset_scenario

        rng = np.random.default_rng(seed)
        if self.pool:
            idx = int(rng.integers(0, len(self.pool)))
            radius = rng.uniform(self.cfg.ring_inner, self.cfg.ring_outer)
            ang = rng.uniform(-np.pi, np.pi)
            self.state = relocalize(
                self.pool[idx], radius * np.array([np.cos(ang), np.sin(ang)]),
                rng.uniform(-np.pi, np.pi),
            )
        else:
            self.state = reset_scenario(ScenarioKind.DRIBBLE_INIT, seed, self.cfg)
        self.prev_state = self.state
        self.episode_ticks = 0
        self._ever_held = False
        self._rewards = {}
        self._info = {}

    def goal(self) -> np.ndarray:
        return shoot_goal(self.state, include_pivot=True)

    def extra_input(self):
        return None

    def on_step(self, before: WorldState, after: WorldState) -> WorldState:
        cfg = self.cfg
        self._ever_held = self._ever_held or after.ball.held
        if not self._ever_held:
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
        else:
            r = shoot_task_reward(before, after, cfg, traveling_violation=True)
        self._rewards = {"task": float(r)}
        self._info = {"violation": int(after.pivot.traveling), "success": 0}
        released_now = after.shoot.released and not before.shoot.released
        if released_now:
            from ..rewards import projectile_hoop_point

            point = projectile_hoop_point(
                after.ball.position, after.ball.velocity, after.hoop, cfg.hoop_height, cfg.gravity
            )
            self._info["success"] = int(
                point.reachable
                and float(np.linalg.norm(point.point_xy - after.hoop)) <= cfg.hoop_radius
            )
        return after

    def episode_done(self) -> bool:
        lost = (
            not (self.state.ball.held or self.state.shoot.released)
            and float(
                np.linalg.norm(self.state.ball.position[:2] - self.state.agent.position)
            )
            > 2.5
            and self.episode_ticks > 5
        )
        return lost or self.episode_ticks >= 120


class SeqChainController:
    """Dribble until commanded, then run the chained policy directly."""

    def __init__(self, cfg, dribble_policy, chain_policy):
        self.cfg = cfg
        self.dribble_policy = dribble_policy
        self.chain_policy = chain_policy
        self.requested = False
        self.target_velocity = np.zeros(2)

    def reset(self, target_velocity=None) -> None:
        self.requested = False
        if target_velocity is not None:
            self.target_velocity = np.asarray(target_velocity, dtype=float)

    def command_shoot(self) -> None:
        self.requested = True

    def set_target_velocity(self, v) -> None:
        self.target_velocity = np.asarray(v, dtype=float)

    def act(self, state, prev):
        from ..rewards import dribble_goal
        from ..world import observe

        obs = observe(state, prev)
        if self.requested:
            x = np.concatenate([obs, shoot_goal(state, include_pivot=True)])[None]
            action = self.chain_policy.mean(x.astype(np.float32))[0].astype(float)
            phase = 2
        else:
            x = np.concatenate([obs, dribble_goal(state, self.target_velocity)])[None]
            action = self.dribble_policy.mean(x.astype(np.float32))[0].astype(float)
            phase = 0
        return action, {"command": phase, "omega": None, "dominant": phase, "v_bar": 0.0}


def train_sequential_chain(
    cfg,
    pool,
    shoot_ensembles,
    ppo_cfg: PPOConfig,
    hidden,
    iterations: int,
    rng,
    seed_base: int,
    workers: int = 64,
    rollout_ticks: int = 32,
    callback=None,
):
    envs = [SeqChainEnv(cfg, initial_pool=pool) for _ in range(workers)]
    policy = GaussianPolicy(envs[0].input_dim, 21, hidden, rng)
    critic = MultiHeadCritic(envs[0].input_dim, 2, hidden, rng, beta=1e-2)
    learner = PPOLearner(policy, critic, ppo_cfg)
    weights = fixed_objectives(("imit_full", "task"), (0.05, 0.95))
    _, history = train_skill(
        envs,
        learner,
        shoot_ensembles,
        weights,
        iterations=iterations,
        rng=rng,
        seed_base=seed_base,
        rollout_ticks=rollout_ticks,
        callback=callback,
    )
    return policy, critic, history


def grid_search_threshold(
    controller_for_threshold,
    cfg,
    pool,
    seed: int,
    trials: int = 10,
    metric: str = "catch",
) -> tuple[float, dict]:
    """Pick the switching threshold maximizing the trial success rate."""
    best = (-1.0, -1.0)
    scores = {}
    for threshold in THRESHOLD_GRID:
        report = evaluate_catch_rate(
            lambda t=threshold: controller_for_threshold(t),
            cfg,
            pool=pool,
            speed_bins=((0.0, 4.0),),
            trials=trials,
            seed=seed,
        )
        if metric == "catch":
            score = report.catch_rates["0-4"]
        else:
            score = float(np.mean([t.made for t in report.trials]))
        scores[threshold] = score
        if score > best[1]:
            best = (threshold, score)
    return best[0], scores
