from .harvest import good_state_filter, harvest_initial_states
from .pair import co_adapt_pair
from .spec import (
    BOOTSTRAP_ADMIT,
    VALUE_ADMIT,
    HarvestedState,
    TransitionSpec,
    TransitionType,
    facing_error,
)
from .train import (
    TransitionContext,
    adapt_successor,
    extend_critic_input,
    make_value_provider,
    shoot_value_input,
    train_intermediate,
)

__all__ = [
    "good_state_filter",
    "harvest_initial_states",
    "co_adapt_pair",
    "BOOTSTRAP_ADMIT",
    "VALUE_ADMIT",
    "HarvestedState",
    "TransitionSpec",
    "TransitionType",
    "facing_error",
    "TransitionContext",
    "adapt_successor",
    "extend_critic_input",
    "make_value_provider",
    "shoot_value_input",
    "train_intermediate",
]
