"""Transition training: value-shaped intermediates and successor adaptation.

Type C (intermediate policy): interleaves gather-policy PPO iterations with
adaptation iterations of the successor's residual policy, refreshing the
successor's normalized-value snapshot at each phase barrier.  The successor
starts from the pretrained policy; its critic is cloned with the input layer
zero-extended for the pivot indicator, so initial values match the
pretrained ones exactly.

Type B (mutual adaptation): the successor adapts from predecessor terminal
states; optionally the predecessor fine-tunes with the successor's clipped
normalized value as an extra shaping term.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from ..net import AdapterPolicy, MultiHeadCritic
from ..ppo import PPOConfig, PPOLearner, fixed_objectives
from ..rewards import pivot_indicator, shoot_goal
from ..tasks import GatherEnv, ShootEnv, collect_rollout, train_skill
from ..world import WorldConfig, observe
from ..world.state import WorldState
from .harvest import good_state_filter, harvest_initial_states
from .spec import TransitionSpec, facing_error

log = logging.getLogger(__name__)


@dataclass
class TransitionContext:
    """Shared machinery for transition training runs."""

    cfg: WorldConfig
    gather_ensembles: dict
    shoot_ensembles: dict
    ppo_gather: PPOConfig
    ppo_adapt: PPOConfig
    rng: np.random.Generator
    seed_base: int = 0
    workers: int = 32
    rollout_ticks: int = 32
    interleave: int = 4
    harvest_size: int = 256
    adapt_pool_cap: int = 512
    gather_weights: tuple[float, float, float] = (0.2, 0.1, 0.7)
    hidden: tuple[int, ...] | None = None
    easy_init_prob: float = 0.0


def extend_critic_input(critic: MultiHeadCritic, extra_dim: int) -> MultiHeadCritic:
    """Clone a critic with extra zero-weighted input columns appended."""
    clone = critic.copy()
    w0 = clone.net.weights[0]
    pad = np.zeros((w0.shape[0], extra_dim), dtype=w0.dtype)
    clone.net.weights[0] = np.concatenate([w0, pad], axis=1)
    clone.net.in_dim += extra_dim
    return clone


def shoot_value_input(state: WorldState) -> np.ndarray:
    """Critic input for scoring an arbitrary state with the adapted critic."""
    obs = observe(state, state)
    goal = shoot_goal(state, include_pivot=False)
    return np.concatenate([obs, goal, [pivot_indicator(state)]])


def make_value_provider(critic: MultiHeadCritic, task_head: int):
    def provider(state: WorldState) -> float:
        x = shoot_value_input(state)[None]
        return float(critic.forward(x)[0][0, task_head])

    return provider


def collect_handoff_candidates(
    policy, envs, ticks: int, rng: np.random.Generator, seed_stream, held_only: bool = True
) -> list[WorldState]:
    """Roll the (stochastic) policy and snapshot candidate handoff states."""
    out: list[WorldState] = []
    for env in envs:
        env.reset(seed_stream())
    for _ in range(ticks):
        x = np.stack([env.policy_input() for env in envs]).astype(np.float32)
        actions, _ = policy.sample(x, rng)
        for i, env in enumerate(envs):
            env.world_step(actions[i].astype(np.float64))
            if env.state.ball.held or not held_only:
                out.append(env.state.copy())
            if env.episode_done():
                env.reset(seed_stream())
    return out


def score_states(states: list[WorldState], critic: MultiHeadCritic, task_head: int) -> np.ndarray:
    if not states:
        return np.zeros(0)
    x = np.stack([shoot_value_input(s) for s in states])
    return critic.forward(x)[0][:, task_head]


def train_intermediate(
    tspec: TransitionSpec,
    predecessor_policy,
    predecessor_env_factory,
    successor_policy,
    successor_critic: MultiHeadCritic,
    successor_task_head: int,
    budget: int,
    ctx: TransitionContext,
    adapt: bool = True,
    callback=None,
) -> tuple[dict, dict, list]:
    """Joint intermediate training and successor adaptation (Type C).

    Returns (intermediate artifacts, adapted successor artifacts, history).
    With ``budget == 0`` the inputs are returned unchanged (identity-adapted
    successor, freshly initialized intermediate state only).  ``adapt=False``
    freezes the successor and its value function (the no-adaptation
    ablation).
    """
    cfg = ctx.cfg
    rng = ctx.rng
    seed_counter = [ctx.seed_base]

    def seed_stream() -> int:
        seed_counter[0] += 1
        return seed_counter[0]

    adapted = AdapterPolicy(successor_policy, extra_dim=1)
    adapted_critic = extend_critic_input(successor_critic, 1)

    from ..net import GaussianPolicy

    gather_env_proto = GatherEnv(cfg)
    init_rng = np.random.default_rng(ctx.seed_base + 17)
    hidden = ctx.hidden or tuple(w.shape[0] for w in successor_policy.net.weights[:-1])
    gather_policy = GaussianPolicy(gather_env_proto.input_dim, 21, hidden, init_rng)
    # a securing policy should essentially never push: start the push
    # outputs far below the throw trigger so exploration noise cannot
    # launch a freshly caught ball
    from ..world.state import LEFT, RIGHT, hand_slice

    for side in (LEFT, RIGHT):
        gather_policy.net.biases[-1][hand_slice(side).start + 5] = -1.2
    gather_critic = MultiHeadCritic(
        gather_env_proto.input_dim, len(GatherEnv.objective_names), hidden, init_rng, beta=1e-2
    )
    gather_learner = PPOLearner(gather_policy, gather_critic, ctx.ppo_gather)
    gather_weights = fixed_objectives(GatherEnv.objective_names, ctx.gather_weights)

    history: list[dict] = []
    gather_arts = {
        "policy": gather_policy,
        "critic": gather_critic,
        "learner": gather_learner,
        "weights": gather_weights,
    }
    adapted_arts = {"policy": adapted, "critic": adapted_critic}
    if budget == 0:
        return gather_arts, adapted_arts, history

    pool = harvest_initial_states(
        predecessor_policy,
        predecessor_env_factory,
        ctx.harvest_size,
        seed_stream(),
        cfg,
        workers=min(16, ctx.workers),
    )
    if not pool:
        raise RuntimeError("predecessor produced no controlled states to harvest")

    snapshot = adapted_critic.copy()
    provider = make_value_provider(snapshot, successor_task_head)
    gather_envs = [
        GatherEnv(
            cfg,
            initial_pool=pool,
            value_provider=provider,
            clip_bound=tspec.clip_bound,
            easy_init_prob=ctx.easy_init_prob,
        )
        for _ in range(ctx.workers)
    ]
    adapt_learner = PPOLearner(adapted, adapted_critic, ctx.ppo_adapt)
    adapt_weights = fixed_objectives(("imit_full", "task"), (0.4, 0.6))
    adapt_pool: list[WorldState] = []
    candidate_envs = [
        GatherEnv(cfg, initial_pool=pool, value_provider=provider, clip_bound=tspec.clip_bound)
        for _ in range(min(8, ctx.workers))
    ]

    for cycle in range(budget):
        _, gather_hist = train_skill(
            gather_envs,
            gather_learner,
            ctx.gather_ensembles,
            gather_weights,
            iterations=ctx.interleave,
            rng=rng,
            seed_base=seed_stream() * 1000,
            rollout_ticks=ctx.rollout_ticks,
        )

        candidates = []
        if adapt:
            candidates = collect_handoff_candidates(
                gather_policy, candidate_envs, ticks=40, rng=rng, seed_stream=seed_stream
            )
        if candidates:
            v_bars = score_states(candidates, adapted_critic, successor_task_head)
            held = np.array([s.ball.held for s in candidates])
            errors = np.array([facing_error(s, s.hoop) for s in candidates])
            admitted = good_state_filter(
                candidates,
                v_bars,
                held,
                errors,
                tspec.clip_bound,
                tspec.bootstrap_prob,
                np.deg2rad(tspec.facing_tolerance_deg),
                seed_stream(),
            )
            adapt_pool.extend(h.copy_state() for h in admitted)
            if len(adapt_pool) > ctx.adapt_pool_cap:
                adapt_pool = adapt_pool[-ctx.adapt_pool_cap :]

        adapt_record = {}
        if adapt and adapt_pool:
            shoot_envs = [
                ShootEnv(cfg, adapted=True, initial_pool=adapt_pool)
                for _ in range(ctx.workers)
            ]
            for env in shoot_envs:
                env.reset(seed_stream())
            batch, stats = collect_rollout(
                shoot_envs,
                adapted,
                adapted_critic,
                ctx.shoot_ensembles,
                ctx.rollout_ticks,
                rng,
                seed_stream,
            )
            diag = adapt_learner.update(batch, adapt_weights, rng)
            adapt_record = {
                "adapt_reward": stats.mean_task_reward,
                "adapt_success": stats.successes,
                "adapt_episodes": stats.episodes,
                "adapt_kl": diag["approx_kl"],
            }

        snapshot = adapted_critic.copy()
        provider = make_value_provider(snapshot, successor_task_head)
        for env in gather_envs + candidate_envs:
            env.value_provider = provider

        record = {
            "cycle": cycle,
            "gather_reward": gather_hist[-1]["task_reward"],
            "gather_success": sum(h["successes"] for h in gather_hist),
            "gather_episodes": sum(h["episodes"] for h in gather_hist),
            "pool": len(adapt_pool),
            **adapt_record,
        }
        history.append(record)
        if callback is not None:
            callback(cycle, record)
    return gather_arts, adapted_arts, history


def adapt_successor(
    tspec: TransitionSpec,
    predecessor_policy,
    predecessor_env_factory,
    successor_policy,
    successor_critic: MultiHeadCritic,
    successor_task_head: int,
    budget: int,
    ctx: TransitionContext,
    successor_env_factory=None,
) -> tuple[dict, list]:
    """Mutual adaptation (Type B): adapt the successor's residual policy on
    predecessor terminal states.  Returns (adapted artifacts, history)."""
    adapted = AdapterPolicy(successor_policy, extra_dim=1)
    adapted_critic = extend_critic_input(successor_critic, 1)
    arts = {"policy": adapted, "critic": adapted_critic}
    if budget == 0:
        return arts, []

    rng = ctx.rng
    seed_counter = [ctx.seed_base + 900_000]

    def seed_stream() -> int:
        seed_counter[0] += 1
        return seed_counter[0]

    pool = harvest_initial_states(
        predecessor_policy,
        predecessor_env_factory,
        ctx.harvest_size,
        seed_stream(),
        ctx.cfg,
        workers=min(16, ctx.workers),
    )
    if not pool:
        raise RuntimeError("predecessor produced no states to adapt from")
    if successor_env_factory is None:
        successor_env_factory = lambda cfg, pool_: ShootEnv(cfg, adapted=True, initial_pool=pool_)

    learner = PPOLearner(adapted, adapted_critic, ctx.ppo_adapt)
    weights = fixed_objectives(("imit_full", "task"), (0.4, 0.6))
    envs = [successor_env_factory(ctx.cfg, pool) for _ in range(ctx.workers)]
    history: list[dict] = []
    for it in range(budget):
        for env in envs:
            env.reset(seed_stream())
        batch, stats = collect_rollout(
            envs, adapted, adapted_critic, ctx.shoot_ensembles, ctx.rollout_ticks, rng, seed_stream
        )
        diag = learner.update(batch, weights, rng)
        history.append(
            {
                "iteration": it,
                "reward": stats.mean_task_reward,
                "successes": stats.successes,
                "episodes": stats.episodes,
                "kl": diag["approx_kl"],
            }
        )
    return arts, history
