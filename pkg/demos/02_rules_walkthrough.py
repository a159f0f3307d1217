"""Walkthrough of the dribble and pivot/traveling automata on small traces."""

import numpy as np

from hoopworld.rules import (
    DribbleTracker,
    PivotTracker,
    foot_movement_detection,
    pivot_traveling_update,
    update_dribble_state,
)

print("== dribble detection over a push-bounce cycle ==")
tracker = DribbleTracker()
trace = [(-1.0, -2.2), (-2.2, -2.5), (-2.5, 2.1), (2.1, 1.7), (1.7, -0.4)]
for vz_prev, vz_cur in trace:
    tracker = update_dribble_state(tracker, vz_prev, vz_cur)
    print(
        f" vz {vz_prev:+.1f} -> {vz_cur:+.1f}:  dribble={tracker.i_dribble}"
        f"  gate={tracker.can_dribble}  n+={tracker.n_plus}  n-={tracker.n_minus}"
    )

print("\n== pivot assignment and a traveling call ==")


def verts(l_down, r_down, l_x=0.0):
    lz = 0.0 if l_down else 0.15
    rz = 0.0 if r_down else 0.15
    return np.array(
        [
            [[l_x + 0.1, 0.15, lz], [l_x - 0.1, 0.15, lz]],
            [[0.1, -0.15, rz], [-0.1, -0.15, rz]],
        ]
    )


pivot = PivotTracker()
script = [
    ("catch with both feet down", True, verts(True, True)),
    ("lift the left foot", True, verts(False, True)),
    ("hold still on the right pivot", True, verts(False, True)),
    ("re-plant the left foot far away", True, verts(True, True, l_x=0.6)),
    ("now drag the right (pivot) foot", True, None),
]
names = {-1: "undefined", 0: "left", 1: "right", 2: "either"}
for tick, (label, held, v) in enumerate(script):
    if v is None:
        v = verts(True, True, l_x=0.6)
        v[1, :, 0] += 0.05   # drag both right-foot vertices
    flags, tr = foot_movement_detection(pivot, v, tick)
    traveling, pivot = pivot_traveling_update(tr, held, flags, tick)
    print(f" {label:34s} pivot={names[pivot.pivot]:9s} traveling={traveling}")
