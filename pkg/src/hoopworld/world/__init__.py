from .config import WorldConfig
from .scenarios import ScenarioError, ScenarioKind, ballistic_velocity, relocalize, reset_scenario
from .sim import (
    ACTION_DIM,
    OBS_DIM,
    clamp_action,
    detect_field_goal,
    detect_invalid_contact,
    observe,
    soft_reset_ball,
    step,
)
from .state import (
    LEFT,
    RIGHT,
    AgentState,
    BallState,
    FootState,
    HandState,
    ShootTracker,
    WorldState,
    default_feet,
    default_hands,
    hold_pose,
    make_state,
)

__all__ = [
    "WorldConfig",
    "ScenarioError",
    "ScenarioKind",
    "ballistic_velocity",
    "relocalize",
    "reset_scenario",
    "ACTION_DIM",
    "OBS_DIM",
    "clamp_action",
    "detect_field_goal",
    "detect_invalid_contact",
    "observe",
    "soft_reset_ball",
    "step",
    "LEFT",
    "RIGHT",
    "AgentState",
    "BallState",
    "FootState",
    "HandState",
    "ShootTracker",
    "WorldState",
    "default_feet",
    "default_hands",
    "hold_pose",
    "make_state",
]
