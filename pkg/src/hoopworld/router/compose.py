"""Soft action composition and the router training reward."""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .state import GATHER, SHOOT, RouterState, dominant_index


def blend_actions(omega: np.ndarray, action_collection: np.ndarray) -> np.ndarray:
    """Weight-sum the primitive actions: omega (3,) by collection (3, act)."""
    return np.asarray(omega, dtype=float) @ np.asarray(action_collection, dtype=float)


def compose_action(
    router_policy,
    router_input: np.ndarray,
    command: np.ndarray,
    action_collection: np.ndarray,
    rng: np.random.Generator | None = None,
):
    """Blend primitives around the reference command.

    Deterministic (mean offsets) unless an rng is given, in which case the
    router's stochastic head is sampled and the log-probability returned.
    Returns (omega, blended action, log_prob | None).
    """
    x = np.asarray(router_input, dtype=np.float32)[None]
    if rng is None:
        offsets = router_policy.mean(x)[0].astype(float)
        logp = None
    else:
        sample, lp = router_policy.sample(x, rng)
        offsets = sample[0].astype(float)
        logp = float(lp[0])
    omega = np.asarray(command, dtype=float) + offsets
    return omega, blend_actions(omega, action_collection), logp


def router_reward(
    rs: RouterState, r_gather_now: float, r_shoot_now: float
) -> tuple[float, RouterState]:
    """Dominance-gated reward; the switch bonus pays once per episode."""
    dom = rs.dominant
    if dom == GATHER:
        return float(r_gather_now), rs
    if dom == SHOOT:
        bonus = 0.0
        if not rs.switch_fired and rs.prev_dominant == GATHER:
            bonus = 0.5
            rs = replace(rs, switch_fired=True)
        return float(bonus + r_shoot_now), rs
    return 0.0, rs
