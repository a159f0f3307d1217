"""Pivot-foot assignment and traveling detection.

Two cooperating automata run once per control tick while a rule-tracked
episode is active:

1. Foot movement detection: per foot, a ground-contact flag (any vertex
   below the contact height), a drop flag (contact rising edge), and a
   moved flag (all of the foot's recorded contact vertices displaced more
   than the tolerance from their first-contact coordinates).  Displacement
   is per-axis absolute, not Euclidean, so rotating about one planted
   vertex never counts as movement.
2. Pivot/traveling update: assigns the pivot foot on first contact while
   the ball is held (state 2 = either foot, when both feet contact within
   the tolerance window), downgrades state 2 to a single pivot when one
   foot moves or lifts, and flags traveling when the pivot foot moves or
   re-drops.

State is cleared whenever the ball is not held; no traveling can be
flagged without possession.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Tuple

import numpy as np

LEFT, RIGHT = 0, 1

PIVOT_UNDEFINED = -1
PIVOT_LEFT = 0
PIVOT_RIGHT = 1
PIVOT_EITHER = 2

CONTACT_HEIGHT = 0.01
MOVE_TOLERANCE = 0.01
CONTACT_WINDOW = 4

VertexKey = Tuple[int, int]


@dataclass(frozen=True)
class FootFlags:
    contact: bool = False
    moved: bool = False
    dropped: bool = False


@dataclass(frozen=True)
class PivotTracker:
    """Pivot-foot state machine memory.

    ``contacts`` maps (foot, vertex) to the planar coordinate recorded on
    that vertex's first ground contact.  ``first_contact_tick`` is -4 until
    a foot first touches, giving the either-foot tolerance window a
    sentinel that can never satisfy the recency test.
    """

    pivot: int = PIVOT_UNDEFINED
    contacts: Dict[VertexKey, Tuple[float, float]] = field(default_factory=dict)
    first_contact_tick: Tuple[int, int] = (-CONTACT_WINDOW, -CONTACT_WINDOW)
    prev_contact: Tuple[bool, bool] = (False, False)
    traveling: bool = False


def foot_movement_detection(
    tracker: PivotTracker, foot_vertices: np.ndarray, tick: int
) -> tuple[tuple[FootFlags, FootFlags], PivotTracker]:
    """Classify per-foot contact/moved/dropped flags for one tick.

    ``foot_vertices`` has shape (2, n_vertices, 3); index 0 is the left
    foot.  Movement is judged against first-contact coordinates recorded in
    the tracker, before this tick's new contacts are recorded.
    """
    verts = np.asarray(foot_vertices, dtype=float)
    n_feet, n_verts, _ = verts.shape

    moved_vertex: Dict[VertexKey, bool] = {}
    for key, (x0, y0) in tracker.contacts.items():
        f, i = key
        p = verts[f, i]
        moved_vertex[key] = (
            abs(x0 - p[0]) > MOVE_TOLERANCE or abs(y0 - p[1]) > MOVE_TOLERANCE
        )

    flags = []
    for f in range(n_feet):
        contact = bool(np.any(verts[f, :, 2] < CONTACT_HEIGHT))
        dropped = False
        moved = False
        if contact:
            dropped = not tracker.prev_contact[f]
            moved = all(moved_vertex.get((f, i), False) for i in range(n_verts))
        flags.append(FootFlags(contact=contact, moved=moved, dropped=dropped))

    contacts = dict(tracker.contacts)
    first_tick = list(tracker.first_contact_tick)
    for f in range(n_feet):
        for i in range(n_verts):
            key = (f, i)
            if key not in contacts and verts[f, i, 2] < CONTACT_HEIGHT:
                contacts[key] = (float(verts[f, i, 0]), float(verts[f, i, 1]))
                if first_tick[f] < 0:
                    first_tick[f] = tick

    updated = replace(
        tracker,
        contacts=contacts,
        first_contact_tick=(first_tick[0], first_tick[1]),
        prev_contact=(flags[LEFT].contact, flags[RIGHT].contact),
    )
    return (flags[LEFT], flags[RIGHT]), updated


def pivot_traveling_update(
    tracker: PivotTracker,
    held: bool,
    flags: tuple[FootFlags, FootFlags],
    tick: int,
) -> tuple[bool, PivotTracker]:
    """Advance the pivot automaton; returns (traveling, updated tracker)."""
    left, right = flags
    traveling = False

    if not held:
        return False, replace(
            tracker,
            pivot=PIVOT_UNDEFINED,
            contacts={},
            first_contact_tick=(-CONTACT_WINDOW, -CONTACT_WINDOW),
            prev_contact=(False, False),
            traveling=False,
        )

    pivot = tracker.pivot
    if pivot == PIVOT_UNDEFINED:
        if left.contact and right.contact:
            pivot = PIVOT_EITHER
        elif left.contact:
            pivot = PIVOT_LEFT
        elif right.contact:
            pivot = PIVOT_RIGHT
    elif pivot == PIVOT_EITHER:
        if left.dropped or right.dropped:
            traveling = True
        elif left.moved and right.moved:
            traveling = True
        elif (not left.contact) or (right.contact and left.moved):
            pivot = PIVOT_RIGHT
            traveling = right.moved
        elif (not right.contact) or (left.contact and right.moved):
            pivot = PIVOT_LEFT
            traveling = left.moved
    elif pivot == PIVOT_LEFT:
        traveling = left.moved or left.dropped
    elif pivot == PIVOT_RIGHT:
        traveling = right.moved or right.dropped

    t_left, t_right = tracker.first_contact_tick
    if (
        left.contact
        and t_left > tick - CONTACT_WINDOW
        and right.contact
        and t_right > tick - CONTACT_WINDOW
    ):
        pivot = PIVOT_EITHER

    return traveling, replace(tracker, pivot=pivot, traveling=traveling)
