"""Clipped-surrogate PPO learner over multi-objective advantages.

Per update: GAE per objective head on unnormalized values, per-buffer
advantage standardization, weighted combination, then the usual epochs of
clipped-ratio minibatch ascent.  The critic regresses every head to its
normalization-adjusted return after the value statistics absorb the batch.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, fields

import numpy as np

from ..net import Adam, MultiHeadCritic
from .gae import compute_gae
from .weights import ObjectiveWeights

log = logging.getLogger(__name__)

ADV_STD_FLOOR = 1e-8


@dataclass(frozen=True)
class PPOConfig:
    gamma: float = 0.95
    lam: float = 0.95
    clip_eps: float = 0.2
    policy_lr: float = 5e-6
    critic_lr: float = 1e-4
    workers: int = 512
    replay_size: int = 4096
    batch_size: int = 256
    epochs: int = 5
    entropy_coef: float = 0.0
    value_beta: float = 3e-4

    def __post_init__(self) -> None:
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma must lie in (0, 1]")
        if not 0.0 < self.lam <= 1.0:
            raise ValueError("lambda must lie in (0, 1]")
        if self.clip_eps <= 0.0:
            raise ValueError("clip range must be positive")

    @classmethod
    def from_dict(cls, values: dict) -> "PPOConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise KeyError(f"unknown ppo config keys: {sorted(unknown)}")
        return cls(**values)


@dataclass
class RolloutBatch:
    """On-policy rollout tensors, time-major over parallel workers.

    ``rewards``/``values`` carry one column per objective head; ``dones``
    marks terminations (no bootstrap across them).  ``extras`` holds the
    optional additional goal input of adapted policies.
    """

    inputs: np.ndarray            # (T, W, in_dim)
    actions: np.ndarray           # (T, W, act_dim) or (T, W) int
    log_probs: np.ndarray         # (T, W)
    rewards: np.ndarray           # (T, W, K)
    values: np.ndarray            # (T, W, K) unnormalized
    dones: np.ndarray             # (T, W)
    bootstrap_values: np.ndarray  # (W, K) unnormalized
    extras: np.ndarray | None = None   # (T, W, extra_dim)
    meta: dict = field(default_factory=dict)

    @property
    def n_steps(self) -> int:
        return self.inputs.shape[0] * self.inputs.shape[1]


def standardize_and_weight(advantages: np.ndarray, weights: np.ndarray) -> np.ndarray:
    """Standardize each objective head over the batch, then mix by weight.

    A zero-variance head contributes nothing (its centered values are zero
    and the std is floored).
    """
    adv = np.asarray(advantages, dtype=np.float64)
    flat = adv.reshape(-1, adv.shape[-1])
    mean = flat.mean(axis=0)
    std = np.maximum(flat.std(axis=0), ADV_STD_FLOOR)
    standardized = (adv - mean) / std
    return standardized @ np.asarray(weights, dtype=np.float64)


def explained_variance(returns: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Per-head explained variance of value predictions."""
    r = returns.reshape(-1, returns.shape[-1])
    v = values.reshape(-1, values.shape[-1])
    var = r.var(axis=0)
    out = np.zeros(r.shape[1])
    for k in range(r.shape[1]):
        out[k] = 1.0 - (r[:, k] - v[:, k]).var() / var[k] if var[k] > 1e-12 else 0.0
    return out


class PPOLearner:
    """Holds a policy, its critic, and their optimizer state."""

    def __init__(self, policy, critic: MultiHeadCritic, cfg: PPOConfig):
        self.policy = policy
        self.critic = critic
        self.cfg = cfg
        params = (
            policy.adapter_params() if hasattr(policy, "adapter_params") else policy.params()
        )
        self.policy_opt = Adam(params, lr=cfg.policy_lr)
        self.critic_opt = Adam(critic.params(), lr=cfg.critic_lr)

    def update(
        self,
        batch: RolloutBatch,
        weights: ObjectiveWeights,
        rng: np.random.Generator,
    ) -> dict:
        cfg = self.cfg
        advantages, returns = compute_gae(
            batch.rewards,
            batch.values,
            batch.dones,
            cfg.gamma,
            cfg.lam,
            batch.bootstrap_values,
        )
        combined = standardize_and_weight(advantages, weights.as_array())

        self.critic.update_stats(returns.reshape(-1, returns.shape[-1]))
        norm_targets = self.critic.normalize_targets(
            returns.reshape(-1, returns.shape[-1])
        )

        T, W = batch.log_probs.shape
        n = T * W
        x = batch.inputs.reshape(n, -1)
        if batch.actions.ndim == 3:
            acts = batch.actions.reshape(n, -1)
        else:
            acts = batch.actions.reshape(n)
        logp_old = batch.log_probs.reshape(n)
        adv = combined.reshape(n)
        extras = batch.extras.reshape(n, -1) if batch.extras is not None else None
        x_critic = np.concatenate([x, extras], axis=1) if extras is not None else x

        diag = {
            "clip_fraction": 0.0,
            "approx_kl": 0.0,
            "surrogate": 0.0,
            "value_loss": 0.0,
            "aborted": False,
            "explained_variance": explained_variance(returns, batch.values).tolist(),
        }
        n_mb = 0
        eps = cfg.clip_eps
        for _ in range(cfg.epochs):
            order = rng.permutation(n)
            for start in range(0, n, cfg.batch_size):
                idx = order[start : start + cfg.batch_size]
                if len(idx) < 2:
                    continue
                xb = x[idx]
                ab = acts[idx]
                adv_b = adv[idx]
                logp_old_b = logp_old[idx]
                if extras is not None:
                    logp_new, cache = self.policy.log_prob(xb, ab, extras[idx])
                else:
                    logp_new, cache = self.policy.log_prob(xb, ab)
                ratio = np.exp(np.clip(logp_new - logp_old_b, -20.0, 20.0))
                unclipped = ratio * adv_b
                clipped = np.clip(ratio, 1.0 - eps, 1.0 + eps) * adv_b
                surrogate = float(np.mean(np.minimum(unclipped, clipped)))
                if not np.isfinite(surrogate):
                    log.error("ppo: non-finite surrogate, aborting iteration")
                    diag["aborted"] = True
                    return diag

                inside = (ratio > 1.0 - eps) & (ratio < 1.0 + eps)
                active = (unclipped <= clipped) | inside
                dsurr_dratio = np.where(active, adv_b, 0.0)
                coeff = -(dsurr_dratio * ratio) / len(idx)
                grads = self.policy.backward(cache, coeff)
                if cfg.entropy_coef and hasattr(self.policy, "log_std"):
                    grads[-1] = grads[-1] - cfg.entropy_coef
                self.policy_opt.step(grads)
                if hasattr(self.policy, "clamp_log_std"):
                    self.policy.clamp_log_std()

                v_loss, v_grads = self.critic.value_loss_backward(
                    x_critic[idx], norm_targets[idx]
                )
                self.critic_opt.step(v_grads)

                diag["clip_fraction"] += float(np.mean(np.abs(ratio - 1.0) > eps))
                diag["approx_kl"] += float(np.mean(logp_old_b - logp_new))
                diag["surrogate"] += surrogate
                diag["value_loss"] += v_loss
                n_mb += 1
        if n_mb:
            for key in ("clip_fraction", "approx_kl", "surrogate", "value_loss"):
                diag[key] /= n_mb
        return diag


def ppo_update(
    policy,
    critic: MultiHeadCritic,
    batch: RolloutBatch,
    cfg: PPOConfig,
    weights: ObjectiveWeights,
    rng: np.random.Generator | None = None,
    learner: PPOLearner | None = None,
) -> tuple[object, MultiHeadCritic, dict]:
    """One PPO iteration; returns (policy, critic, diagnostics)."""
    if learner is None:
        learner = PPOLearner(policy, critic, cfg)
    if rng is None:
        rng = np.random.default_rng(0)
    diag = learner.update(batch, weights, rng)
    return policy, critic, diag
