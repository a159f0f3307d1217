"""Per-objective weights, including the dribble dynamic-weight scheduler.

During dribble training the navigation weight starts low and grows with the
dribble success rate (an exponentially averaged bounce-success fraction);
navigation and dribbling always share a 0.7 task budget, and the navigation
weight never decreases.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class ObjectiveWeights:
    names: tuple[str, ...]
    values: tuple[float, ...]
    p_dribble: float = 0.0
    nav_excess: float = 0.0

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.float64)

    def index(self, name: str) -> int:
        return self.names.index(name)


def dribble_objectives() -> ObjectiveWeights:
    """Initial weights: imitation 0.2/0.1, navigation 0.2, dribbling 0.5."""
    return ObjectiveWeights(
        names=("imit_body", "imit_hand", "nav", "dribble"),
        values=(0.2, 0.1, 0.2, 0.5),
    )


def fixed_objectives(names: tuple[str, ...], values: tuple[float, ...]) -> ObjectiveWeights:
    return ObjectiveWeights(names=names, values=values)


def dribble_weight_update(
    weights: ObjectiveWeights, n_plus: int, n_minus: int
) -> ObjectiveWeights:
    """Fold a rollout window's bounce counts into the navigation weight.

    With no bounces in the window the weights are returned unchanged.
    """
    total = n_plus + n_minus
    if total < 1:
        return weights
    p = 0.9 * weights.p_dribble + 0.1 * (n_plus / total)
    excess = max(float(np.exp(-10.0 * (1.0 - p))), weights.nav_excess)
    w_nav = 0.2 + 0.5 * excess
    w_dribble = 0.7 - w_nav
    values = list(weights.values)
    values[weights.index("nav")] = w_nav
    values[weights.index("dribble")] = w_dribble
    return replace(
        weights, values=tuple(values), p_dribble=p, nav_excess=excess
    )
