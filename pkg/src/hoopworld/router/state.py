"""Reference-command machine and dominance bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

DRIBBLE, GATHER, SHOOT = 0, 1, 2


def one_hot(index: int) -> np.ndarray:
    c = np.zeros(3)
    c[index] = 1.0
    return c


@dataclass(frozen=True)
class RouterState:
    """Per-episode routing state.

    The reference command progresses dribble -> gather -> shoot and never
    regresses within an episode; the switch bonus fires at most once, on
    the first gather-to-shoot dominance change.
    """

    command: int = DRIBBLE
    omega: tuple[float, float, float] = (1.0, 0.0, 0.0)
    dominant: int | None = DRIBBLE
    prev_dominant: int | None = DRIBBLE
    switch_fired: bool = False
    shoot_requested: bool = False

    @property
    def command_vector(self) -> np.ndarray:
        return one_hot(self.command)


def reference_command_update(
    rs: RouterState,
    shoot_requested: bool,
    v_bar_shoot: float,
    threshold: float = -1.0,
) -> RouterState:
    """Advance the command: dribble until requested, gather until the
    successor's normalized value clears the threshold, then shoot (latched)."""
    requested = rs.shoot_requested or shoot_requested
    command = rs.command
    if command == DRIBBLE and requested:
        command = GATHER
    if command == GATHER and v_bar_shoot > threshold:
        command = SHOOT
    return replace(rs, command=command, shoot_requested=requested)


def dominant_index(omega: np.ndarray) -> int | None:
    """Index whose weight exceeds the sum of the other two, if any.

    Scanned in fixed order; over nonnegative weights at most one index can
    qualify.
    """
    total = float(np.sum(omega))
    for j in range(len(omega)):
        if omega[j] > total - omega[j]:
            return j
    return None


def record_omega(rs: RouterState, omega: np.ndarray) -> RouterState:
    dom = dominant_index(omega)
    return replace(
        rs,
        omega=(float(omega[0]), float(omega[1]), float(omega[2])),
        prev_dominant=rs.dominant,
        dominant=dom,
    )
