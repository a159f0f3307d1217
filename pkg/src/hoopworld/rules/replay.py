"""Trace replay: annotate recorded kinematics with rule-automata outputs.

Input is JSON lines, one tick each:

    {"tick": 0, "held": true, "ball_vz": -1.2,
     "feet": [[[x,y,z],[x,y,z]], [[x,y,z],[x,y,z]]]}

Output mirrors each tick with dribble and pivot annotations.
"""

from __future__ import annotations

import json
from typing import IO, Iterable, Iterator

import numpy as np

from .dribble import DribbleTracker, update_dribble_state
from .pivot import PivotTracker, foot_movement_detection, pivot_traveling_update


def replay_rows(rows: Iterable[dict], delta_v: float = -9.81 / 30.0) -> Iterator[dict]:
    dribble = DribbleTracker(delta_v=delta_v)
    pivot = PivotTracker()
    prev_vz: float | None = None
    for row in rows:
        tick = int(row["tick"])
        held = bool(row.get("held", False))
        vz = float(row.get("ball_vz", 0.0))
        if prev_vz is not None:
            dribble = update_dribble_state(dribble, prev_vz, vz)
        prev_vz = vz
        feet = np.asarray(row["feet"], dtype=float)
        flags, tracker = foot_movement_detection(pivot, feet, tick)
        traveling, pivot = pivot_traveling_update(tracker, held, flags, tick)
        yield {
            "tick": tick,
            "i_dribble": dribble.i_dribble,
            "can_dribble": dribble.can_dribble,
            "n_plus": dribble.n_plus,
            "n_minus": dribble.n_minus,
            "pivot": pivot.pivot,
            "traveling": traveling,
            "contact": [flags[0].contact, flags[1].contact],
            "moved": [flags[0].moved, flags[1].moved],
            "dropped": [flags[0].dropped, flags[1].dropped],
        }


def replay_stream(infile: IO[str], outfile: IO[str], delta_v: float = -9.81 / 30.0) -> int:
    """Annotate a JSON-lines stream; returns the number of ticks processed."""
    count = 0

    def rows():
        for line in infile:
            line = line.strip()
            if line:
                yield json.loads(line)

    for annotation in replay_rows(rows(), delta_v=delta_v):
        outfile.write(json.dumps(annotation) + "\n")
        count += 1
    return count
