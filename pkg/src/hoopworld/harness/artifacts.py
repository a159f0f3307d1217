"""Checkpoint adapters for the concrete network classes."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from ..net import AdapterPolicy, CategoricalPolicy, GaussianPolicy, MultiHeadCritic
from ..net.checkpoint import load_arrays, save_arrays


def _mlp_meta(net) -> dict:
    return {"in_dim": net.in_dim, "hidden": list(net.hidden), "out_dim": net.out_dim}


def save_policy(path: str | Path, policy: GaussianPolicy, meta: dict | None = None) -> None:
    header = {"net": _mlp_meta(policy.net), **(meta or {})}
    save_arrays(path, "gaussian_policy", policy.params(), header)


def load_policy(path: str | Path) -> tuple[GaussianPolicy, dict]:
    kind, arrays, meta = load_arrays(path)
    if kind != "gaussian_policy":
        raise ValueError(f"{path}: expected a gaussian_policy checkpoint, got {kind}")
    net_meta = meta["net"]
    policy = GaussianPolicy(
        net_meta["in_dim"],
        net_meta["out_dim"],
        tuple(net_meta["hidden"]),
        np.random.default_rng(0),
    )
    for target, src in zip(policy.params(), arrays):
        target[...] = src
    return policy, meta


def save_categorical(path: str | Path, policy: CategoricalPolicy, meta: dict | None = None) -> None:
    header = {"net": _mlp_meta(policy.net), **(meta or {})}
    save_arrays(path, "categorical_policy", policy.params(), header)


def load_categorical(path: str | Path) -> tuple[CategoricalPolicy, dict]:
    kind, arrays, meta = load_arrays(path)
    if kind != "categorical_policy":
        raise ValueError(f"{path}: expected categorical_policy, got {kind}")
    net_meta = meta["net"]
    policy = CategoricalPolicy(
        net_meta["in_dim"], net_meta["out_dim"], tuple(net_meta["hidden"]), np.random.default_rng(0)
    )
    for target, src in zip(policy.params(), arrays):
        target[...] = src
    return policy, meta


def save_critic(path: str | Path, critic: MultiHeadCritic, meta: dict | None = None) -> None:
    header = {
        "net": _mlp_meta(critic.net),
        "n_heads": critic.n_heads,
        "beta": critic.beta,
        "stats": {
            "mean": critic.mean.tolist(),
            "sigma": critic.sigma.tolist(),
            "m1": critic._m1.tolist(),
            "m2": critic._m2.tolist(),
            "w": critic._w,
        },
        **(meta or {}),
    }
    save_arrays(path, "critic", critic.params(), header)


def load_critic(path: str | Path) -> tuple[MultiHeadCritic, dict]:
    kind, arrays, meta = load_arrays(path)
    if kind != "critic":
        raise ValueError(f"{path}: expected critic, got {kind}")
    net_meta = meta["net"]
    critic = MultiHeadCritic(
        net_meta["in_dim"],
        meta["n_heads"],
        tuple(net_meta["hidden"]),
        np.random.default_rng(0),
        beta=meta.get("beta", 3e-4),
    )
    for target, src in zip(critic.params(), arrays):
        target[...] = src
    stats = meta["stats"]
    critic.mean = np.array(stats["mean"])
    critic.sigma = np.array(stats["sigma"])
    critic._m1 = np.array(stats["m1"])
    critic._m2 = np.array(stats["m2"])
    critic._w = stats["w"]
    return critic, meta


def save_adapter(path: str | Path, adapter: AdapterPolicy, meta: dict | None = None) -> None:
    arrays = [*adapter.base.params()]
    n_base = len(arrays)
    arrays.extend(adapter.adapter_params())
    header = {
        "net": _mlp_meta(adapter.base.net),
        "extra_dim": adapter.extra_dim,
        "n_base_arrays": n_base,
        **(meta or {}),
    }
    save_arrays(path, "adapter_policy", arrays, header)


def load_adapter(path: str | Path) -> tuple[AdapterPolicy, dict]:
    kind, arrays, meta = load_arrays(path)
    if kind != "adapter_policy":
        raise ValueError(f"{path}: expected adapter_policy, got {kind}")
    net_meta = meta["net"]
    base = GaussianPolicy(
        net_meta["in_dim"],
        net_meta["out_dim"],
        tuple(net_meta["hidden"]),
        np.random.default_rng(0),
    )
    n_base = meta["n_base_arrays"]
    for target, src in zip(base.params(), arrays[:n_base]):
        target[...] = src
    adapter = AdapterPolicy(base, extra_dim=meta["extra_dim"])
    for target, src in zip(adapter.adapter_params(), arrays[n_base:]):
        target[...] = src
    return adapter, meta
