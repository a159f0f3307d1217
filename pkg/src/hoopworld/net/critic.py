"""Multi-head critic with adaptive value-target normalization.

Each head k predicts a normalized value; the unnormalized prediction is
``normalized * sigma_k + mean_k``.  Statistics follow debiased exponential
moving averages of the first and second target moments; on every statistics
update the output layer's row k is rescaled so unnormalized predictions are
preserved.
"""

from __future__ import annotations

import numpy as np

from .mlp import MLP

SIGMA_FLOOR = 1e-4


class MultiHeadCritic:
    def __init__(
        self,
        in_dim: int,
        n_heads: int,
        hidden: tuple[int, ...],
        rng: np.random.Generator,
        beta: float = 3e-4,
        dtype=np.float64,
    ):
        self.net = MLP(in_dim, hidden, n_heads, rng, dtype=dtype)
        self.n_heads = n_heads
        self.beta = beta
        self.mean = np.zeros(n_heads, dtype=np.float64)
        self.sigma = np.ones(n_heads, dtype=np.float64)
        self._m1 = np.zeros(n_heads, dtype=np.float64)
        self._m2 = np.ones(n_heads, dtype=np.float64)
        self._w = 1.0

    def copy(self) -> "MultiHeadCritic":
        clone = object.__new__(MultiHeadCritic)
        clone.net = self.net.copy()
        clone.n_heads = self.n_heads
        clone.beta = self.beta
        clone.mean = self.mean.copy()
        clone.sigma = self.sigma.copy()
        clone._m1 = self._m1.copy()
        clone._m2 = self._m2.copy()
        clone._w = self._w
        return clone

    def params(self) -> list[np.ndarray]:
        return self.net.params()

    def forward(self, x: np.ndarray):
        """Returns (normalized, unnormalized), each (B, n_heads)."""
        norm = self.net.forward(x)
        return norm, norm * self.sigma.astype(norm.dtype) + self.mean.astype(norm.dtype)

    def normalized_value(self, x: np.ndarray, head: int) -> np.ndarray:
        return self.net.forward(x)[:, head]

    def normalize_targets(self, targets: np.ndarray) -> np.ndarray:
        return (targets - self.mean) / self.sigma

    def update_stats(self, targets: np.ndarray) -> None:
        """Fold a target batch into the running moments and rescale heads."""
        targets = np.asarray(targets, dtype=np.float64)
        if targets.size == 0:
            return
        batch_m1 = targets.mean(axis=0)
        batch_m2 = np.mean(targets * targets, axis=0)
        b = self.beta
        self._m1 = (1.0 - b) * self._m1 + b * batch_m1
        self._m2 = (1.0 - b) * self._m2 + b * batch_m2
        self._w = (1.0 - b) * self._w + b

        new_mean = self._m1 / self._w
        var = self._m2 / self._w - new_mean * new_mean
        new_sigma = np.sqrt(np.maximum(var, SIGMA_FLOOR * SIGMA_FLOOR))

        old_mean, old_sigma = self.mean, self.sigma
        w_out = self.net.weights[-1]
        b_out = self.net.biases[-1]
        scale = old_sigma / new_sigma
        w_out *= scale[:, None].astype(w_out.dtype)
        b_out[:] = (
            (old_sigma * b_out.astype(np.float64) + old_mean - new_mean) / new_sigma
        ).astype(b_out.dtype)
        self.mean = new_mean
        self.sigma = new_sigma

    def value_loss_backward(self, x: np.ndarray, norm_targets: np.ndarray):
        """MSE on normalized targets; returns (loss, grads)."""
        out, cache = self.net.forward(x, need_cache=True)
        diff = out - norm_targets.astype(out.dtype)
        loss = float(np.mean(diff * diff))
        dy = (2.0 / diff.size) * diff
        grads, _ = self.net.backward(cache, dy)
        return loss, grads
