"""Fully connected networks with hand-written gradients.

Two flavors:

- ``MLP``: a single tanh network (linear output) used by policies and
  critics.  ``backward`` returns parameter gradients and the input
  gradient.
- ``EnsembleMLP``: N independently initialized networks evaluated in one
  stacked einsum pass, used by discriminator ensembles.  Besides plain
  backprop it implements the second-order pass needed for a squared
  input-gradient penalty (backprop through the input-gradient computation).

All parameters are stored in the dtype given at construction (float32 by
default; float64 instances are used by the finite-difference checks).
"""

from __future__ import annotations

import numpy as np


def xavier_limit(fan_in: int, fan_out: int) -> float:
    return float(np.sqrt(6.0 / (fan_in + fan_out)))


class MLP:
    """Tanh MLP with a linear output layer.

    ``sizes`` lists the hidden widths; the output layer can be scaled down
    at init (``final_scale``) so fresh policies act near zero.
    """

    def __init__(
        self,
        in_dim: int,
        hidden: tuple[int, ...],
        out_dim: int,
        rng: np.random.Generator,
        final_scale: float = 1.0,
        dtype=np.float32,
    ):
        self.in_dim = in_dim
        self.hidden = tuple(hidden)
        self.out_dim = out_dim
        self.dtype = dtype
        dims = [in_dim, *hidden, out_dim]
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        for i in range(len(dims) - 1):
            limit = xavier_limit(dims[i], dims[i + 1])
            if i == len(dims) - 2:
                limit *= final_scale
            w = rng.uniform(-limit, limit, size=(dims[i + 1], dims[i])).astype(dtype)
            self.weights.append(w)
            self.biases.append(np.zeros(dims[i + 1], dtype=dtype))

    @property
    def n_hidden(self) -> int:
        return len(self.hidden)

    def params(self) -> list[np.ndarray]:
        out = []
        for w, b in zip(self.weights, self.biases):
            out.extend((w, b))
        return out

    def copy(self) -> "MLP":
        clone = object.__new__(MLP)
        clone.in_dim = self.in_dim
        clone.hidden = self.hidden
        clone.out_dim = self.out_dim
        clone.dtype = self.dtype
        clone.weights = [w.copy() for w in self.weights]
        clone.biases = [b.copy() for b in self.biases]
        return clone

    def forward(self, x: np.ndarray, need_cache: bool = False):
        x = np.asarray(x, dtype=self.dtype)
        h = x
        hs = [x]
        for i in range(self.n_hidden):
            z = h @ self.weights[i].T + self.biases[i]
            h = np.tanh(z)
            if need_cache:
                hs.append(h)
        y = h @ self.weights[-1].T + self.biases[-1]
        if need_cache:
            return y, hs
        return y

    def backward(self, cache: list[np.ndarray], dy: np.ndarray):
        """Gradients of sum(dy * y) w.r.t. params and input.

        ``cache`` is the activations list from ``forward(need_cache=True)``.
        Returns (grads aligned with ``params()``, dL/dx).
        """
        hs = cache
        dy = np.asarray(dy, dtype=self.dtype)
        grads_w = [None] * len(self.weights)
        grads_b = [None] * len(self.biases)
        grads_w[-1] = dy.T @ hs[-1]
        grads_b[-1] = dy.sum(axis=0)
        dh = dy @ self.weights[-1]
        for i in range(self.n_hidden - 1, -1, -1):
            dz = dh * (1.0 - hs[i + 1] * hs[i + 1])
            grads_w[i] = dz.T @ hs[i]
            grads_b[i] = dz.sum(axis=0)
            dh = dz @ self.weights[i]
        grads = []
        for gw, gb in zip(grads_w, grads_b):
            grads.extend((gw, gb))
        return grads, dh


class EnsembleMLP:
    """N stacked tanh MLPs with scalar linear outputs, evaluated jointly.

    Parameter tensors carry a leading ensemble axis; member n is an
    independent network seeded from ``seed + n``.
    """

    def __init__(
        self,
        n_members: int,
        in_dim: int,
        hidden: tuple[int, ...],
        seed: int,
        dtype=np.float32,
    ):
        self.n_members = n_members
        self.in_dim = in_dim
        self.hidden = tuple(hidden)
        self.dtype = dtype
        dims = [in_dim, *hidden, 1]
        self.weights: list[np.ndarray] = []
        self.biases: list[np.ndarray] = []
        for i in range(len(dims) - 1):
            limit = xavier_limit(dims[i], dims[i + 1])
            stack_w = np.empty((n_members, dims[i + 1], dims[i]), dtype=dtype)
            for n in range(n_members):
                rng = np.random.default_rng(seed + 7919 * n + i)
                stack_w[n] = rng.uniform(-limit, limit, size=(dims[i + 1], dims[i]))
            self.weights.append(stack_w)
            self.biases.append(np.zeros((n_members, dims[i + 1]), dtype=dtype))

    @property
    def n_hidden(self) -> int:
        return len(self.hidden)

    def params(self) -> list[np.ndarray]:
        out = []
        for w, b in zip(self.weights, self.biases):
            out.extend((w, b))
        return out

    def forward(self, x: np.ndarray, need_cache: bool = False):
        """Evaluate all members on a shared batch; returns (B, N)."""
        x = np.asarray(x, dtype=self.dtype)
        h = np.broadcast_to(x[:, None, :], (x.shape[0], self.n_members, x.shape[1]))
        hs = [h]
        for i in range(self.n_hidden):
            z = np.einsum("bni,noi->bno", h, self.weights[i]) + self.biases[i][None]
            h = np.tanh(z)
            if need_cache:
                hs.append(h)
        y = np.einsum("bni,noi->bno", h, self.weights[-1]) + self.biases[-1][None]
        y = y[..., 0]
        if need_cache:
            return y, hs
        return y

    def backward(self, cache: list[np.ndarray], dy: np.ndarray):
        """Gradients of sum(dy * y); dy has shape (B, N)."""
        hs = cache
        dz_out = np.asarray(dy, dtype=self.dtype)[..., None]  # (B, N, 1)
        grads_w = [None] * len(self.weights)
        grads_b = [None] * len(self.biases)
        grads_w[-1] = np.einsum("bno,bni->noi", dz_out, hs[-1])
        grads_b[-1] = dz_out.sum(axis=0)
        dh = np.einsum("bno,noi->bni", dz_out, self.weights[-1])
        for i in range(self.n_hidden - 1, -1, -1):
            dz = dh * (1.0 - hs[i + 1] * hs[i + 1])
            grads_w[i] = np.einsum("bno,bni->noi", dz, hs[i])
            grads_b[i] = dz.sum(axis=0)
            dh = np.einsum("bno,noi->bni", dz, self.weights[i])
        grads = []
        for gw, gb in zip(grads_w, grads_b):
            grads.extend((gw, gb))
        return grads, dh

    def input_gradient(self, x: np.ndarray):
        """Per-member gradient of the scalar output w.r.t. the input.

        Returns (g, cache) where g has shape (B, N, in_dim).
        """
        y, hs = self.forward(x, need_cache=True)
        sigps = [1.0 - hs[i + 1] * hs[i + 1] for i in range(self.n_hidden)]
        s_list = [None] * self.n_hidden
        s = sigps[-1] * self.weights[-1][None, :, 0, :]
        s_list[-1] = s
        for i in range(self.n_hidden - 2, -1, -1):
            u = np.einsum("bno,noi->bni", s, self.weights[i + 1])
            s = sigps[i] * u
            s_list[i] = s
        g = np.einsum("bno,noi->bni", s_list[0], self.weights[0])
        return g, (hs, sigps, s_list)

    def grad_penalty_backward(self, x: np.ndarray):
        """Squared-gradient penalty and its parameter gradients.

        Penalty per member: mean over the batch of ||d output / d input||^2.
        Returns (penalty (N,), grads aligned with ``params()``).  Derived by
        backpropagating a second time through the input-gradient chain;
        verified against finite differences in the test suite.
        """
        x = np.asarray(x, dtype=self.dtype)
        bsz = x.shape[0]
        g, (hs, sigps, s_list) = self.input_gradient(x)
        penalty = np.einsum("bni,bni->n", g, g) / bsz

        L = self.n_hidden
        grads_w = [np.zeros_like(w) for w in self.weights]
        grads_b = [np.zeros_like(b) for b in self.biases]
        zbars = [None] * L

        g_bar = (2.0 / bsz) * g
        # g = s_1 W_1
        s_bar = np.einsum("bni,noi->bno", g_bar, self.weights[0])
        grads_w[0] += np.einsum("bno,bni->noi", s_list[0], g_bar)

        for i in range(L):
            if i + 1 <= L - 1:
                u_next = np.einsum("bno,noi->bni", s_list[i + 1], self.weights[i + 1])
            else:
                u_next = np.broadcast_to(
                    self.weights[-1][None, :, 0, :], s_list[i].shape
                )
            h_i = hs[i + 1]
            sigpp = -2.0 * h_i * sigps[i]
            zbars[i] = sigpp * u_next * s_bar
            u_bar = sigps[i] * s_bar
            if i + 1 <= L - 1:
                grads_w[i + 1] += np.einsum("bno,bni->noi", s_list[i + 1], u_bar)
                s_bar = np.einsum("bni,noi->bno", u_bar, self.weights[i + 1])
            else:
                grads_w[-1][:, 0, :] += u_bar.sum(axis=0)

        # reverse through the forward pass with the accumulated z adjoints
        for i in range(L - 1, -1, -1):
            dz = zbars[i]
            grads_w[i] += np.einsum("bno,bni->noi", dz, hs[i])
            grads_b[i] += dz.sum(axis=0)
            if i > 0:
                dh = np.einsum("bno,noi->bni", dz, self.weights[i])
                zbars[i - 1] = zbars[i - 1] + dh * sigps[i - 1]

        grads = []
        for gw, gb in zip(grads_w, grads_b):
            grads.extend((gw, gb))
        return penalty, grads
