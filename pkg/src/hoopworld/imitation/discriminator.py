"""Discriminator ensembles for adversarial imitation.

Each imitation objective owns N independently initialized networks scoring
consecutive-frame feature pairs.  The imitation reward is the mean of the
per-member outputs clipped to [-1, 1]; members train on a hinge loss with a
squared input-gradient penalty evaluated at uniform random interpolates
between reference and policy pairs.
"""

from __future__ import annotations

import logging

import numpy as np

from ..net import Adam, EnsembleMLP

log = logging.getLogger(__name__)


class ReplayBuffer:
    """Fixed-capacity ring buffer of feature rows."""

    def __init__(self, capacity: int, dim: int):
        self.capacity = capacity
        self.data = np.zeros((capacity, dim), dtype=np.float32)
        self.size = 0
        self.cursor = 0

    def push(self, rows: np.ndarray) -> None:
        rows = np.asarray(rows, dtype=np.float32)
        for row in rows:
            self.data[self.cursor] = row
            self.cursor = (self.cursor + 1) % self.capacity
            self.size = min(self.size + 1, self.capacity)

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        idx = rng.integers(0, self.size, size=n)
        return self.data[idx]


class DiscriminatorEnsemble:
    def __init__(
        self,
        channel: str,
        pair_dim: int,
        n_members: int = 32,
        hidden: tuple[int, ...] = (256, 256),
        lr: float = 1e-5,
        gp_coef: float = 10.0,
        buffer_size: int = 8192,
        batch_size: int = 512,
        seed: int = 0,
        dtype=np.float32,
    ):
        self.channel = channel
        self.pair_dim = pair_dim
        self.n_members = n_members
        self.gp_coef = gp_coef
        self.batch_size = batch_size
        self.net = EnsembleMLP(n_members, pair_dim, hidden, seed=seed, dtype=dtype)
        self.opt = Adam(self.net.params(), lr=lr)
        self.real_buffer = ReplayBuffer(buffer_size, pair_dim)
        self.fake_buffer = ReplayBuffer(buffer_size, pair_dim)


def imitation_reward(
    ensemble: DiscriminatorEnsemble, obs_t: np.ndarray, obs_t1: np.ndarray
) -> np.ndarray:
    """Mean clipped ensemble score for a batch of frame pairs; in [-1, 1]."""
    obs_t = np.atleast_2d(obs_t)
    obs_t1 = np.atleast_2d(obs_t1)
    pairs = np.concatenate([obs_t, obs_t1], axis=-1)
    scores = ensemble.net.forward(pairs)
    return np.clip(scores, -1.0, 1.0).mean(axis=1)


def discriminator_update(
    ensemble: DiscriminatorEnsemble,
    real_pairs: np.ndarray,
    fake_pairs: np.ndarray,
    rng: np.random.Generator,
) -> dict:
    """One hinge + gradient-penalty step on every ensemble member.

    Members whose loss comes out non-finite are skipped (their gradient
    slices are zeroed) and reported.
    """
    real = np.asarray(real_pairs, dtype=ensemble.net.dtype)
    fake = np.asarray(fake_pairs, dtype=ensemble.net.dtype)
    if len(real) == 0 or len(fake) == 0:
        raise ValueError("discriminator update requires nonempty batches")

    y_real, cache_real = ensemble.net.forward(real, need_cache=True)
    y_fake, cache_fake = ensemble.net.forward(fake, need_cache=True)

    hinge_real = np.maximum(0.0, 1.0 - y_real)
    hinge_fake = np.maximum(0.0, 1.0 + y_fake)
    d_real = np.where(hinge_real > 0.0, -1.0 / len(real), 0.0)
    d_fake = np.where(hinge_fake > 0.0, 1.0 / len(fake), 0.0)
    grads_real, _ = ensemble.net.backward(cache_real, d_real)
    grads_fake, _ = ensemble.net.backward(cache_fake, d_fake)

    n_mix = min(len(real), len(fake))
    u = rng.uniform(size=(n_mix, 1)).astype(ensemble.net.dtype)
    mix = u * real[:n_mix] + (1.0 - u) * fake[:n_mix]
    penalty, grads_gp = ensemble.net.grad_penalty_backward(mix)

    loss_members = (
        hinge_real.mean(axis=0) + hinge_fake.mean(axis=0) + ensemble.gp_coef * penalty
    )
    ok = np.isfinite(loss_members)
    if not np.all(ok):
        log.warning(
            "discriminator(%s): skipping %d member(s) with non-finite loss",
            ensemble.channel,
            int(np.sum(~ok)),
        )
    mask = ok.astype(ensemble.net.dtype)

    grads = []
    for gr, gf, gg in zip(grads_real, grads_fake, grads_gp):
        g = gr + gf + ensemble.gp_coef * gg
        shape = (len(mask),) + (1,) * (g.ndim - 1)
        grads.append(g * mask.reshape(shape))
    ensemble.opt.step(grads)

    return {
        "loss": float(np.mean(loss_members[ok])) if np.any(ok) else float("nan"),
        "penalty": float(np.mean(penalty[ok])) if np.any(ok) else float("nan"),
        "real_score": float(y_real.mean()),
        "fake_score": float(y_fake.mean()),
        "skipped_members": int(np.sum(~ok)),
    }


def train_from_buffers(
    ensemble: DiscriminatorEnsemble, rng: np.random.Generator
) -> dict | None:
    """Sample both replay streams and run one update, if enough data."""
    if ensemble.real_buffer.size < 2 or ensemble.fake_buffer.size < 2:
        return None
    n = min(ensemble.batch_size, ensemble.real_buffer.size, ensemble.fake_buffer.size)
    real = ensemble.real_buffer.sample(n, rng)
    fake = ensemble.fake_buffer.sample(n, rng)
    return discriminator_update(ensemble, real, fake, rng)


def make_pairs(features: np.ndarray) -> np.ndarray:
    """Stack consecutive frames of a (T, d) clip into (T-1, 2d) pairs."""
    f = np.asarray(features)
    if len(f) < 2:
        raise ValueError("a clip needs at least two frames")
    return np.concatenate([f[:-1], f[1:]], axis=-1)
