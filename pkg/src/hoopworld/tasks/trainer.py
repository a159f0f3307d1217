"""Skill training loop: rollouts, discriminator updates, PPO iterations."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, fields

import numpy as np

from ..imitation import (
    CHANNEL_DIMS,
    DiscriminatorEnsemble,
    ReferenceLibrary,
    make_pairs,
    train_from_buffers,
)
from ..net import GaussianPolicy, MultiHeadCritic
from ..ppo import ObjectiveWeights, PPOConfig, PPOLearner, dribble_weight_update
from .base import SkillEnv, collect_rollout

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainProfile:
    """Desk-scale capacity knobs; the published hyperparameters stay in
    PPOConfig and DiscriminatorEnsemble defaults and can be restored via
    config."""

    hidden: tuple[int, ...] = (64, 64)
    disc_hidden: tuple[int, ...] = (32, 32)
    disc_members: int = 8
    workers: int = 64
    rollout_ticks: int = 32
    init_log_std: float = -1.0

    @classmethod
    def from_dict(cls, values: dict) -> "TrainProfile":
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise KeyError(f"unknown profile keys: {sorted(unknown)}")
        coerced = {
            k: tuple(v) if isinstance(v, list) else v for k, v in values.items()
        }
        return cls(**coerced)


@dataclass
class SkillArtifacts:
    policy: GaussianPolicy
    critic: MultiHeadCritic
    ensembles: dict
    weights: ObjectiveWeights
    history: list = field(default_factory=list)


def make_ensembles(
    env: SkillEnv,
    reference_skill: str,
    library: ReferenceLibrary,
    profile: TrainProfile,
    seed: int,
    lr: float = 1e-5,
    gp_coef: float = 10.0,
) -> dict:
    """One discriminator ensemble per imitation objective, primed with
    reference pairs."""
    ensembles = {}
    for i, (name, channel) in enumerate(env.imitation_channels.items()):
        ens = DiscriminatorEnsemble(
            channel,
            pair_dim=2 * CHANNEL_DIMS[channel],
            n_members=profile.disc_members,
            hidden=profile.disc_hidden,
            lr=lr,
            gp_coef=gp_coef,
            seed=seed + 131 * i,
        )
        clips = library.get(reference_skill, channel)
        if not clips:
            raise ValueError(f"no reference clips for {reference_skill}/{channel}")
        for clip in clips:
            ens.real_buffer.push(make_pairs(clip))
        ensembles[name] = ens
    return ensembles


def train_skill(
    envs: list[SkillEnv],
    learner: PPOLearner,
    ensembles: dict,
    weights: ObjectiveWeights,
    iterations: int,
    rng: np.random.Generator,
    seed_base: int,
    dynamic_dribble_weights: bool = False,
    rollout_ticks: int = 32,
    callback=None,
    log_std_anneal: float = 0.0,
    log_std_floor: float = -5.0,
) -> tuple[ObjectiveWeights, list]:
    """Run PPO iterations over an env pool; returns final weights + history.

    ``log_std_anneal`` subtracts a fixed amount from the policy log-std each
    iteration down to ``log_std_floor`` (exploration scheduling).
    """
    counter = [0]

    def seed_stream() -> int:
        counter[0] += 1
        return seed_base + counter[0]

    for i, env in enumerate(envs):
        env.reset(seed_stream())

    history = []
    for it in range(iterations):
        batch, stats = collect_rollout(
            envs, learner.policy, learner.critic, ensembles, rollout_ticks, rng, seed_stream
        )
        for ens in ensembles.values():
            train_from_buffers(ens, rng)
        diag = learner.update(batch, weights, rng)
        if log_std_anneal and hasattr(learner.policy, "log_std"):
            np.clip(
                learner.policy.log_std - log_std_anneal,
                log_std_floor,
                None,
                out=learner.policy.log_std,
            )
        if dynamic_dribble_weights:
            weights = dribble_weight_update(weights, stats.n_plus, stats.n_minus)
        record = {
            "iteration": it,
            "task_reward": stats.mean_task_reward,
            "episode_reward": stats.mean_episode_reward,
            "episodes": stats.episodes,
            "violations": stats.violations,
            "successes": stats.successes,
            "p_dribble": weights.p_dribble,
            "w_nav": weights.values[weights.index("nav")] if "nav" in weights.names else None,
            "head_rewards": stats.extra.get("head_rewards", {}),
            **{k: diag[k] for k in ("clip_fraction", "approx_kl", "surrogate", "value_loss")},
        }
        history.append(record)
        if callback is not None:
            callback(it, record)
        if diag.get("aborted"):
            log.error("training aborted at iteration %d", it)
            break
    return weights, history
