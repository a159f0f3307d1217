"""Skill environments and vectorized rollout collection.

An environment owns one world instance plus per-episode task state (goals,
command randomization, violation handling).  The collector steps a pool of
environments under one policy snapshot, fills imitation reward heads in one
batched discriminator pass afterward, and feeds policy pairs into the
discriminator replay streams.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..imitation import DiscriminatorEnsemble, imitation_reward
from ..ppo import RolloutBatch
from ..world import ACTION_DIM, WorldConfig, observe, step
from ..world.state import WorldState


class SkillEnv:
    """Base class: subclasses define goals, rewards, and episode logic."""

    objective_names: tuple[str, ...] = ()
    imitation_channels: dict = {}
    goal_dim: int = 0
    act_dim: int = ACTION_DIM
    discrete_actions: bool = False

    def __init__(self, cfg: WorldConfig):
        self.cfg = cfg
        self.state: WorldState | None = None
        self.prev_state: WorldState | None = None
        self.episode_ticks = 0

    # subclass API ---------------------------------------------------

    def reset(self, seed: int) -> None:
        raise NotImplementedError

    def goal(self) -> np.ndarray:
        raise NotImplementedError

    def task_rewards(self, before: WorldState, after: WorldState) -> dict:
        raise NotImplementedError

    def episode_done(self) -> bool:
        raise NotImplementedError

    def on_step(self, before: WorldState, after: WorldState) -> WorldState:
        """Hook for mid-episode interventions (soft resets); returns after."""
        return after

    def extra_input(self) -> np.ndarray | None:
        return None

    def info(self) -> dict:
        return {}

    # shared machinery -----------------------------------------------

    def policy_input(self) -> np.ndarray:
        obs = observe(self.state, self.prev_state)
        return np.concatenate([obs, self.goal()])

    @property
    def input_dim(self) -> int:
        return 74 + self.goal_dim

    def world_step(self, action: np.ndarray) -> tuple[WorldState, WorldState]:
        before = self.state
        after = step(before, action, self.cfg)
        after = self.on_step(before, after)
        self.prev_state = before
        self.state = after
        self.episode_ticks += 1
        return before, after

    def features(self) -> dict:
        from ..imitation import extract_partial_observation

        out = {}
        for channel in set(self.imitation_channels.values()):
            out[channel] = extract_partial_observation(self.state, channel).features
        return out


@dataclass
class RolloutStats:
    episodes: int = 0
    mean_task_reward: float = 0.0
    mean_episode_reward: float = 0.0
    n_plus: int = 0
    n_minus: int = 0
    violations: int = 0
    successes: int = 0
    extra: dict = field(default_factory=dict)


def collect_rollout(
    envs: list[SkillEnv],
    policy,
    critic,
    ensembles: dict[str, DiscriminatorEnsemble],
    n_ticks: int,
    rng: np.random.Generator,
    seed_stream,
) -> tuple[RolloutBatch, RolloutStats]:
    """Roll every env ``n_ticks`` under the current policy snapshot.

    ``seed_stream`` is a callable yielding fresh episode seeds.  Imitation
    heads are evaluated in one batched pass after stepping; policy feature
    pairs are pushed to each ensemble's replay stream.
    """
    W = len(envs)
    proto = envs[0]
    names = proto.objective_names
    K = len(names)
    im_heads = {name: i for i, name in enumerate(names) if name in proto.imitation_channels}
    task_heads = [i for i, name in enumerate(names) if name not in proto.imitation_channels]

    in_dim = proto.input_dim
    inputs = np.zeros((n_ticks, W, in_dim), dtype=np.float32)
    if proto.discrete_actions:
        actions = np.zeros((n_ticks, W), dtype=np.int64)
    else:
        actions = np.zeros((n_ticks, W, proto.act_dim), dtype=np.float32)
    log_probs = np.zeros((n_ticks, W))
    rewards = np.zeros((n_ticks, W, K))
    values = np.zeros((n_ticks, W, K))
    dones = np.zeros((n_ticks, W))
    has_extra = proto.extra_input() is not None
    extra_dim = len(proto.extra_input()) if has_extra else 0
    extras = np.zeros((n_ticks, W, extra_dim), dtype=np.float32) if has_extra else None

    channels = sorted(set(proto.imitation_channels.values()))
    feats = {
        c: np.zeros((n_ticks + 1, W, len(envs[0].features()[c])), dtype=np.float32)
        for c in channels
    }
    pair_valid = np.ones((n_ticks, W), dtype=bool)

    stats = RolloutStats()
    ep_reward_acc = np.zeros(W)

    for i, env in enumerate(envs):
        f = env.features()
        for c in channels:
            feats[c][0, i] = f[c]

    for t in range(n_ticks):
        for i, env in enumerate(envs):
            inputs[t, i] = env.policy_input()
            if has_extra:
                extras[t, i] = env.extra_input()
        if has_extra:
            acts, logp = policy.sample(inputs[t], rng, extras[t])
            critic_in = np.concatenate([inputs[t], extras[t]], axis=1)
        else:
            acts, logp = policy.sample(inputs[t], rng)
            critic_in = inputs[t]
        actions[t] = acts
        log_probs[t] = logp
        values[t] = critic.forward(critic_in)[1]

        for i, env in enumerate(envs):
            act_i = acts[i] if proto.discrete_actions else acts[i].astype(np.float64)
            before, after = env.world_step(act_i)
            task_r = env.task_rewards(before, after)
            for k in task_heads:
                rewards[t, i, k] = task_r.get(names[k], 0.0)
            f = env.features()
            for c in channels:
                feats[c][t + 1, i] = f[c]
            info = env.info()
            stats.n_plus += info.get("n_plus_delta", 0)
            stats.n_minus += info.get("n_minus_delta", 0)
            stats.violations += info.get("violation", 0)
            if env.episode_done():
                dones[t, i] = 1.0
                stats.episodes += 1
                stats.successes += info.get("success", 0)
                stats.mean_episode_reward += ep_reward_acc[i] + float(
                    sum(task_r.values())
                )
                ep_reward_acc[i] = 0.0
                env.reset(seed_stream())
                fr = env.features()
                for c in channels:
                    feats[c][t + 1, i] = fr[c]
                if t + 1 < n_ticks:
                    pair_valid[t + 1, i] = True
            else:
                ep_reward_acc[i] += float(sum(task_r.values()))

    # batched imitation rewards over all collected pairs
    for name, head in im_heads.items():
        channel = proto.imitation_channels[name]
        ens = ensembles[name]
        f = feats[channel]
        pairs = np.concatenate(
            [f[:-1].reshape(n_ticks * W, -1), f[1:].reshape(n_ticks * W, -1)], axis=-1
        )
        r = imitation_reward(ens, pairs[:, : f.shape[-1]], pairs[:, f.shape[-1] :])
        rewards[:, :, head] = r.reshape(n_ticks, W)
        ens.fake_buffer.push(pairs[rng.uniform(size=len(pairs)) < 0.25])

    # bootstrap values at the post-rollout states
    final_inputs = np.stack([env.policy_input() for env in envs]).astype(np.float32)
    if has_extra:
        final_extras = np.stack([env.extra_input() for env in envs]).astype(np.float32)
        final_inputs = np.concatenate([final_inputs, final_extras], axis=1)
    bootstrap = critic.forward(final_inputs)[1]

    task_cols = rewards[:, :, task_heads] if task_heads else rewards
    stats.mean_task_reward = float(task_cols.sum(axis=-1).mean())
    stats.extra["head_rewards"] = {
        name: float(rewards[:, :, k].mean()) for k, name in enumerate(names)
    }
    if stats.episodes:
        stats.mean_episode_reward /= stats.episodes

    batch = RolloutBatch(
        inputs=inputs,
        actions=actions,
        log_probs=log_probs,
        rewards=rewards,
        values=values,
        dones=dones,
        bootstrap_values=bootstrap,
        extras=extras,
    )
    return batch, stats
