"""Ball-dribbling state detection.

A dribble is detected from the ball's vertical velocity alone: a drop in
vertical speed that exceeds the free-fall velocity change for one control
tick means a hand pushed the ball downward.  Ground bounces are classified
as successful (a dribble happened since the last bounce) or missed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class DribbleTracker:
    """Per-episode dribble bookkeeping.

    Attributes:
        can_dribble: 1 while another dribble is allowed (ball has bounced
            since the last detected dribble), 0 after a dribble until the
            next ground bounce.
        i_dribble: 1 on the tick a dribble was detected, else 0.
        n_plus: count of bounces preceded by a dribble.
        n_minus: count of bounces with no dribble since the previous bounce.
        delta_v: free-fall velocity change per control tick (gravity / hz).
    """

    can_dribble: int = 1
    i_dribble: int = 0
    n_plus: int = 0
    n_minus: int = 0
    delta_v: float = -9.81 / 30.0

    @property
    def success_fraction(self) -> float:
        total = self.n_plus + self.n_minus
        return self.n_plus / total if total else 0.0

    def reset_counters(self) -> "DribbleTracker":
        return replace(self, n_plus=0, n_minus=0)


def update_dribble_state(
    tracker: DribbleTracker, vz_prev: float, vz_cur: float
) -> DribbleTracker:
    """Advance the dribble automaton by one control tick.

    ``vz_prev`` and ``vz_cur`` are the ball's vertical velocities at the
    previous and current tick.  A dribble fires when the velocity drop
    exceeds free fall by more than 0.01 m/s while the ball moves downward;
    a bounce (sign change minus to plus) books a success or a miss and
    re-arms the dribble gate.
    """
    can = tracker.can_dribble
    n_plus = tracker.n_plus
    n_minus = tracker.n_minus

    if vz_cur - vz_prev < tracker.delta_v - 0.01 and vz_cur < 0.0:
        i_dribble = 1
        can = 0
    else:
        i_dribble = 0

    if vz_prev < 0.0 and vz_cur > 0.0:
        if can == 1:
            n_minus += 1
        else:
            n_plus += 1
        can = 1

    return replace(
        tracker,
        can_dribble=can,
        i_dribble=i_dribble,
        n_plus=n_plus,
        n_minus=n_minus,
    )
