"""Router training over frozen primitives."""

from __future__ import annotations

import numpy as np

from ..net import CategoricalPolicy, GaussianPolicy, MultiHeadCritic
from ..ppo import PPOConfig, PPOLearner, fixed_objectives
from ..tasks import train_skill
from .env import RouterEnv

ROUTER_WEIGHTS = fixed_objectives(("task",), (1.0,))


def make_router_policy(
    in_dim: int, hidden: tuple[int, ...], rng: np.random.Generator, hard: bool = False
):
    """Soft router: tiny-output Gaussian head so early blends track the
    reference command.  Hard router: softmax over the three primitives."""
    if hard:
        return CategoricalPolicy(in_dim, 3, hidden, rng)
    return GaussianPolicy(
        in_dim, 3, hidden, rng, init_log_std=-1.5, final_scale=0.003
    )


def train_router(
    cfg,
    controller_factory,
    initial_pool,
    iterations: int,
    ppo_cfg: PPOConfig,
    hidden: tuple[int, ...],
    rng: np.random.Generator,
    seed_base: int,
    workers: int = 32,
    rollout_ticks: int = 48,
    hard: bool = False,
    callback=None,
):
    """PPO on the routing policy; returns (policy, critic, history)."""
    envs = [
        RouterEnv(cfg, controller_factory, initial_pool=initial_pool, hard=hard)
        for _ in range(workers)
    ]
    in_dim = envs[0].input_dim
    policy = make_router_policy(in_dim, hidden, rng, hard=hard)
    critic = MultiHeadCritic(in_dim, 1, hidden, rng, beta=1e-2)
    learner = PPOLearner(policy, critic, ppo_cfg)
    _, history = train_skill(
        envs,
        learner,
        {},
        ROUTER_WEIGHTS,
        iterations=iterations,
        rng=rng,
        seed_base=seed_base,
        rollout_ticks=rollout_ticks,
        callback=callback,
    )
    return policy, critic, history
