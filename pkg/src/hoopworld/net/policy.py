"""Policy heads: diagonal Gaussian, residual-adapted Gaussian, categorical.

The Gaussian policy keeps a state-independent log-std vector (clamped to
[-5, 1]).  The adapted policy wraps a frozen base and injects zero-initialized
residual blocks into every hidden layer; with all residual weights zero and
no extra goal input its output equals the base exactly.
"""

from __future__ import annotations

import numpy as np

from .mlp import MLP

LOG_STD_MIN = -5.0
LOG_STD_MAX = 1.0
LOG_2PI = float(np.log(2.0 * np.pi))


class GaussianPolicy:
    def __init__(
        self,
        in_dim: int,
        act_dim: int,
        hidden: tuple[int, ...],
        rng: np.random.Generator,
        init_log_std: float = -1.0,
        final_scale: float = 0.01,
        dtype=np.float32,
    ):
        self.net = MLP(in_dim, hidden, act_dim, rng, final_scale=final_scale, dtype=dtype)
        self.log_std = np.full(act_dim, init_log_std, dtype=dtype)
        self.act_dim = act_dim
        self.in_dim = in_dim

    def copy(self) -> "GaussianPolicy":
        clone = object.__new__(GaussianPolicy)
        clone.net = self.net.copy()
        clone.log_std = self.log_std.copy()
        clone.act_dim = self.act_dim
        clone.in_dim = self.in_dim
        return clone

    def params(self) -> list[np.ndarray]:
        return [*self.net.params(), self.log_std]

    def clamp_log_std(self) -> None:
        np.clip(self.log_std, LOG_STD_MIN, LOG_STD_MAX, out=self.log_std)

    def mean(self, x: np.ndarray) -> np.ndarray:
        return self.net.forward(x)

    def sample(self, x: np.ndarray, rng: np.random.Generator):
        """Returns (actions, log_probs) for a batch of inputs."""
        mu = self.net.forward(x)
        std = np.exp(self.log_std)
        noise = rng.standard_normal(size=mu.shape).astype(mu.dtype)
        actions = mu + std * noise
        logp = self._log_prob(mu, actions)
        return actions, logp

    def _log_prob(self, mu: np.ndarray, actions: np.ndarray) -> np.ndarray:
        z = (actions - mu) / np.exp(self.log_std)
        return (
            -0.5 * np.sum(z * z, axis=-1)
            - float(np.sum(self.log_std))
            - 0.5 * self.act_dim * LOG_2PI
        )

    def log_prob(self, x: np.ndarray, actions: np.ndarray):
        """Returns (log_probs, cache) with the cache usable by backward()."""
        mu, cache = self.net.forward(x, need_cache=True)
        return self._log_prob(mu, actions), (cache, mu, actions)

    def backward(self, cache, coeff: np.ndarray):
        """Gradients of sum_b coeff_b * log pi(a_b | x_b) over all params."""
        hs, mu, actions = cache
        std = np.exp(self.log_std)
        inv_var = 1.0 / (std * std)
        delta = actions - mu
        dmu = coeff[:, None] * delta * inv_var
        net_grads, _ = self.net.backward(hs, dmu.astype(mu.dtype))
        z2 = delta * delta * inv_var
        dlog_std = np.sum(coeff[:, None] * (z2 - 1.0), axis=0)
        return [*net_grads, dlog_std.astype(self.log_std.dtype)]


class AdapterPolicy:
    """Frozen base policy plus trainable per-hidden-layer residual blocks.

    Each hidden layer's pre-activation gains ``U_i @ concat(h_prev, g') +
    c_i`` with U, c zero-initialized.  ``extra_dim`` is the width of the
    optional extra goal input; pass ``extra=None`` when it is zero.
    """

    def __init__(self, base: GaussianPolicy, extra_dim: int = 0):
        self.base = base
        self.extra_dim = extra_dim
        self.act_dim = base.act_dim
        dtype = base.net.dtype
        dims = [base.net.in_dim, *base.net.hidden]
        self.res_weights = []
        self.res_biases = []
        for i, width in enumerate(base.net.hidden):
            xi_dim = dims[i] + extra_dim
            self.res_weights.append(np.zeros((width, xi_dim), dtype=dtype))
            self.res_biases.append(np.zeros(width, dtype=dtype))
        self.log_std = base.log_std.copy()

    def adapter_params(self) -> list[np.ndarray]:
        out = []
        for w, b in zip(self.res_weights, self.res_biases):
            out.extend((w, b))
        out.append(self.log_std)
        return out

    def clamp_log_std(self) -> None:
        np.clip(self.log_std, LOG_STD_MIN, LOG_STD_MAX, out=self.log_std)

    def _stack(self, h: np.ndarray, extra: np.ndarray | None) -> np.ndarray:
        if self.extra_dim == 0:
            return h
        if extra is None:
            raise ValueError("adapter expects an extra goal input")
        return np.concatenate([h, extra.astype(h.dtype)], axis=-1)

    def forward(self, x: np.ndarray, extra: np.ndarray | None = None, need_cache: bool = False):
        net = self.base.net
        h = np.asarray(x, dtype=net.dtype)
        hs = [h]
        xis = []
        for i in range(net.n_hidden):
            xi = self._stack(h, extra)
            xis.append(xi)
            z = h @ net.weights[i].T + net.biases[i]
            z = z + xi @ self.res_weights[i].T + self.res_biases[i]
            h = np.tanh(z)
            hs.append(h)
        y = h @ net.weights[-1].T + net.biases[-1]
        if need_cache:
            return y, (hs, xis)
        return y

    def mean(self, x: np.ndarray, extra: np.ndarray | None = None) -> np.ndarray:
        return self.forward(x, extra)

    def sample(self, x: np.ndarray, rng: np.random.Generator, extra: np.ndarray | None = None):
        mu = self.forward(x, extra)
        std = np.exp(self.log_std)
        noise = rng.standard_normal(size=mu.shape).astype(mu.dtype)
        actions = mu + std * noise
        return actions, self._log_prob(mu, actions)

    def _log_prob(self, mu: np.ndarray, actions: np.ndarray) -> np.ndarray:
        z = (actions - mu) / np.exp(self.log_std)
        return (
            -0.5 * np.sum(z * z, axis=-1)
            - float(np.sum(self.log_std))
            - 0.5 * self.act_dim * LOG_2PI
        )

    def log_prob(self, x: np.ndarray, actions: np.ndarray, extra: np.ndarray | None = None):
        mu, cache = self.forward(x, extra, need_cache=True)
        return self._log_prob(mu, actions), (cache, mu, actions)

    def backward(self, cache, coeff: np.ndarray):
        """Gradients w.r.t. adapter params only; the base stays frozen."""
        (hs, xis), mu, actions = cache
        net = self.base.net
        std = np.exp(self.log_std)
        inv_var = 1.0 / (std * std)
        delta = actions - mu
        dy = (coeff[:, None] * delta * inv_var).astype(mu.dtype)

        grads_u = [None] * len(self.res_weights)
        grads_c = [None] * len(self.res_biases)
        dh = dy @ net.weights[-1]
        for i in range(net.n_hidden - 1, -1, -1):
            dz = dh * (1.0 - hs[i + 1] * hs[i + 1])
            grads_u[i] = dz.T @ xis[i]
            grads_c[i] = dz.sum(axis=0)
            dh = dz @ net.weights[i]
            if self.extra_dim == 0:
                dh = dh + dz @ self.res_weights[i]
            else:
                dh = dh + (dz @ self.res_weights[i])[:, : dh.shape[1]]

        z2 = delta * delta * inv_var
        dlog_std = np.sum(coeff[:, None] * (z2 - 1.0), axis=0)
        out = []
        for gu, gc in zip(grads_u, grads_c):
            out.extend((gu, gc))
        out.append(dlog_std.astype(self.log_std.dtype))
        return out


class CategoricalPolicy:
    """Softmax policy over a small discrete action set (hard-router head)."""

    def __init__(
        self,
        in_dim: int,
        n_actions: int,
        hidden: tuple[int, ...],
        rng: np.random.Generator,
        dtype=np.float32,
    ):
        self.net = MLP(in_dim, hidden, n_actions, rng, final_scale=0.01, dtype=dtype)
        self.n_actions = n_actions

    def params(self) -> list[np.ndarray]:
        return self.net.params()

    def probs(self, x: np.ndarray) -> np.ndarray:
        logits = self.net.forward(x)
        logits = logits - logits.max(axis=-1, keepdims=True)
        e = np.exp(logits)
        return e / e.sum(axis=-1, keepdims=True)

    def sample(self, x: np.ndarray, rng: np.random.Generator):
        p = self.probs(x)
        u = rng.uniform(size=(p.shape[0], 1))
        actions = (p.cumsum(axis=-1) < u).sum(axis=-1).astype(int)
        actions = np.clip(actions, 0, self.n_actions - 1)
        logp = np.log(p[np.arange(len(actions)), actions] + 1e-12)
        return actions, logp

    def greedy(self, x: np.ndarray) -> np.ndarray:
        return self.probs(x).argmax(axis=-1)

    def log_prob(self, x: np.ndarray, actions: np.ndarray):
        logits, cache = self.net.forward(x, need_cache=True)
        shifted = logits - logits.max(axis=-1, keepdims=True)
        log_z = np.log(np.exp(shifted).sum(axis=-1))
        logp = shifted[np.arange(len(actions)), actions] - log_z
        return logp, (cache, shifted, actions)

    def backward(self, cache, coeff: np.ndarray):
        hs, shifted, actions = cache
        e = np.exp(shifted)
        p = e / e.sum(axis=-1, keepdims=True)
        dlogits = -p * coeff[:, None]
        dlogits[np.arange(len(actions)), actions] += coeff
        grads, _ = self.net.backward(hs, dlogits.astype(p.dtype))
        return grads
