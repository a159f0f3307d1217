from .compose import blend_actions, compose_action, router_reward
from .controller import ComposedController, DirectExecutionController, ZeroRouter
from .distill import DistilledController, distill
from .env import RouterEnv
from .state import (
    DRIBBLE,
    GATHER,
    SHOOT,
    RouterState,
    dominant_index,
    one_hot,
    record_omega,
    reference_command_update,
)
from .train import make_router_policy, train_router

__all__ = [
    "blend_actions",
    "compose_action",
    "router_reward",
    "ComposedController",
    "DirectExecutionController",
    "ZeroRouter",
    "DistilledController",
    "distill",
    "RouterEnv",
    "DRIBBLE",
    "GATHER",
    "SHOOT",
    "RouterState",
    "dominant_index",
    "one_hot",
    "record_omega",
    "reference_command_update",
    "make_router_policy",
    "train_router",
]
