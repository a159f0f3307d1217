"""A small PPO run on the dribble task.

Forty iterations at reduced capacity: enough to watch the bounce-success
average start moving without waiting for the full pipeline.  The staged
trainer (`hoopworld train`) runs the real thing.
"""

import time

import numpy as np

from hoopworld.imitation import build_reference_library
from hoopworld.net import GaussianPolicy, MultiHeadCritic
from hoopworld.ppo import PPOConfig, PPOLearner, dribble_objectives
from hoopworld.tasks import DribbleEnv, TrainProfile, make_ensembles, train_skill
from hoopworld.world import WorldConfig

cfg = WorldConfig()
profile = TrainProfile(workers=32, rollout_ticks=32)
library = build_reference_library(seed=5, clips_per_set=4, length=90)
envs = [DribbleEnv(cfg) for _ in range(profile.workers)]
rng = np.random.default_rng(0)

policy = GaussianPolicy(envs[0].input_dim, 21, profile.hidden, rng)
critic = MultiHeadCritic(envs[0].input_dim, 4, profile.hidden, rng, beta=1e-2)
ensembles = make_ensembles(envs[0], "dribble", library, profile, seed=3, lr=3e-5)
learner = PPOLearner(
    policy,
    critic,
    PPOConfig(policy_lr=1e-3, critic_lr=1e-3, workers=32, batch_size=256, epochs=5),
)

start = time.time()


def progress(it, record):
    if it % 5 == 0:
        print(
            f" it={it:3d}  bounce-success EMA={record['p_dribble']:.3f}"
            f"  task reward={record['task_reward']:.3f}"
            f"  violations={record['violations']}"
            f"  ({time.time() - start:.0f}s)"
        )


weights, history = train_skill(
    envs,
    learner,
    ensembles,
    dribble_objectives(),
    iterations=40,
    rng=rng,
    seed_base=1000,
    dynamic_dribble_weights=True,
    rollout_ticks=profile.rollout_ticks,
    callback=progress,
)
print(f"\nfinal bounce-success EMA: {weights.p_dribble:.3f}")
print("head rewards:", {k: round(v, 3) for k, v in history[-1]["head_rewards"].items()})
