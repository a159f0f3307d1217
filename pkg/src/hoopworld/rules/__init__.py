from .dribble import DribbleTracker, update_dribble_state
from .pivot import (
    FootFlags,
    PivotTracker,
    foot_movement_detection,
    pivot_traveling_update,
)

__all__ = [
    "DribbleTracker",
    "update_dribble_state",
    "FootFlags",
    "PivotTracker",
    "foot_movement_detection",
    "pivot_traveling_update",
]
