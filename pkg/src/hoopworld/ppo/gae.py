"""Generalized advantage estimation, per objective head."""

from __future__ import annotations

import numpy as np


def compute_gae(
    rewards: np.ndarray,
    values: np.ndarray,
    dones: np.ndarray,
    gamma: float,
    lam: float,
    bootstrap_values: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """GAE(gamma, lambda) over a (T, W, K) reward/value tensor.

    ``dones[t, w]`` = 1 means episode termination after step t; the
    advantage chain and bootstrap are masked there.  ``bootstrap_values``
    (W, K) are the values of the states following the last step (zeros when
    omitted).  Returns (advantages, returns), both (T, W, K).
    """
    rewards = np.asarray(rewards, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    dones = np.asarray(dones, dtype=np.float64)
    T, W, K = rewards.shape
    if bootstrap_values is None:
        bootstrap_values = np.zeros((W, K))
    advantages = np.zeros((T, W, K))
    next_value = np.asarray(bootstrap_values, dtype=np.float64)
    gae = np.zeros((W, K))
    for t in range(T - 1, -1, -1):
        mask = (1.0 - dones[t])[:, None]
        delta = rewards[t] + gamma * next_value * mask - values[t]
        gae = delta + gamma * lam * mask * gae
        advantages[t] = gae
        next_value = values[t]
    returns = advantages + values
    return advantages, returns
