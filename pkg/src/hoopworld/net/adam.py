"""Adam optimizer over lists of numpy parameter arrays (updated in place)."""

from __future__ import annotations

import logging

import numpy as np

log = logging.getLogger(__name__)


class Adam:
    def __init__(
        self,
        params: list[np.ndarray],
        lr: float,
        beta1: float = 0.9,
        beta2: float = 0.999,
        eps: float = 1e-8,
    ):
        self.params = params
        self.lr = lr
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = [np.zeros_like(p) for p in params]
        self.v = [np.zeros_like(p) for p in params]
        self.skipped = 0

    def step(self, grads: list[np.ndarray], lr: float | None = None) -> bool:
        """Apply one update; returns False (and skips) on non-finite grads."""
        if any(not np.all(np.isfinite(g)) for g in grads):
            self.skipped += 1
            log.warning("adam: skipping update with non-finite gradients")
            return False
        lr = self.lr if lr is None else lr
        self.t += 1
        b1, b2 = self.beta1, self.beta2
        bc1 = 1.0 - b1**self.t
        bc2 = 1.0 - b2**self.t
        for p, g, m, v in zip(self.params, grads, self.m, self.v):
            g = g.astype(p.dtype, copy=False)
            m *= b1
            m += (1.0 - b1) * g
            v *= b2
            v += (1.0 - b2) * g * g
            p -= lr * (m / bc1) / (np.sqrt(v / bc2) + self.eps)
        return True
