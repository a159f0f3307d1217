"""Initial-state harvesting and the good-state admission filter."""

from __future__ import annotations

import numpy as np

from ..world import WorldConfig
from ..world.state import WorldState
from .spec import BOOTSTRAP_ADMIT, VALUE_ADMIT, HarvestedState


def harvest_initial_states(
    predecessor_policy,
    env_factory,
    n: int,
    seed: int,
    cfg: WorldConfig,
    workers: int = 16,
    ticks: int = 120,
    control_radius: float = 1.5,
) -> list[WorldState]:
    """Sample ball-under-control states from predecessor rollouts.

    The predecessor runs with its stochastic policy over randomized episode
    goals; states are drawn uniformly over rollout ticks, keeping only
    snapshots where the ball is within ``control_radius`` of the agent.
    """
    if n == 0:
        return []
    rng = np.random.default_rng(seed)
    envs = [env_factory(cfg) for _ in range(workers)]
    for i, env in enumerate(envs):
        env.reset(seed + 1000 + i)

    reservoir: list[WorldState] = []
    seen = 0
    next_seed = seed + 5000
    for t in range(ticks):
        x = np.stack([env.policy_input() for env in envs]).astype(np.float32)
        actions, _ = predecessor_policy.sample(x, rng)
        for i, env in enumerate(envs):
            env.world_step(actions[i].astype(np.float64))
            state = env.state
            dist = float(np.linalg.norm(state.ball.position[:2] - state.agent.position))
            if dist <= control_radius:
                seen += 1
                if len(reservoir) < n:
                    reservoir.append(state.copy())
                else:
                    j = int(rng.integers(0, seen))
                    if j < n:
                        reservoir[j] = state.copy()
            if env.episode_done():
                next_seed += 1
                env.reset(next_seed)
    return reservoir


def good_state_filter(
    states: list[WorldState],
    v_bars: np.ndarray,
    held: np.ndarray,
    facing_errors: np.ndarray,
    v: float,
    admit_prob: float,
    facing_tolerance: float,
    seed: int,
) -> list[HarvestedState]:
    """Admit all states scoring above -v; bootstrap a fraction of the rest.

    A below-threshold state is bootstrap-eligible only while the ball is
    held and the agent roughly faces the aim; eligible states are admitted
    independently with ``admit_prob``.
    """
    rng = np.random.default_rng(seed)
    admitted: list[HarvestedState] = []
    v_bars = np.asarray(v_bars, dtype=float)
    held = np.asarray(held, dtype=bool)
    facing_errors = np.asarray(facing_errors, dtype=float)
    for i, state in enumerate(states):
        roll = rng.uniform()
        if v_bars[i] > -v:
            admitted.append(HarvestedState(state, state.tick, float(v_bars[i]), VALUE_ADMIT))
        elif held[i] and facing_errors[i] <= facing_tolerance and roll < admit_prob:
            admitted.append(
                HarvestedState(state, state.tick, float(v_bars[i]), BOOTSTRAP_ADMIT)
            )
    return admitted
