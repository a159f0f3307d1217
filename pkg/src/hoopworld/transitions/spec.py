"""Transition declarations and harvested-state records."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from ..world.state import WorldState


class TransitionType(enum.Enum):
    DIRECT = "A"
    MUTUAL_ADAPTATION = "B"
    INTERMEDIATE = "C"


@dataclass(frozen=True)
class TransitionSpec:
    """Declarative description of one skill transition.

    ``clip_bound`` bounds the successor-value shaping term; the bootstrap
    fields control random admission of low-value handoff states (held ball,
    roughly facing the aim).  ``uncontrolled_window`` / ``fall_penalty``
    cap intermediate-policy episodes.
    """

    kind: TransitionType
    predecessor: str
    successor: str
    intermediate: str | None = None
    clip_bound: float = 1.0
    bootstrap_prob: float = 0.25
    facing_tolerance_deg: float = 45.0
    uncontrolled_window: int = 40
    fall_penalty: float = -25.0

    def __post_init__(self) -> None:
        if self.kind is TransitionType.INTERMEDIATE and not self.intermediate:
            raise ValueError("an intermediate-policy transition needs an intermediate id")
        if self.clip_bound <= 0:
            raise ValueError("clip bound must be positive")


VALUE_ADMIT = "value"
BOOTSTRAP_ADMIT = "random-bootstrap"


@dataclass
class HarvestedState:
    state: WorldState
    source_tick: int
    v_bar: float
    reason: str = VALUE_ADMIT

    def copy_state(self) -> WorldState:
        return self.state.copy()


def facing_error(state: WorldState, target_xy: np.ndarray) -> float:
    """Absolute angle between the agent heading and the bearing to a point."""
    rel = np.asarray(target_xy, dtype=float) - state.agent.position
    bearing = float(np.arctan2(rel[1], rel[0]))
    err = bearing - state.agent.heading
    return abs(float(np.arctan2(np.sin(err), np.cos(err))))
