from .gae import compute_gae
from .learner import (
    ADV_STD_FLOOR,
    PPOConfig,
    PPOLearner,
    RolloutBatch,
    explained_variance,
    ppo_update,
    standardize_and_weight,
)
from .weights import (
    ObjectiveWeights,
    dribble_objectives,
    dribble_weight_update,
    fixed_objectives,
)

__all__ = [
    "compute_gae",
    "ADV_STD_FLOOR",
    "PPOConfig",
    "PPOLearner",
    "RolloutBatch",
    "explained_variance",
    "ppo_update",
    "standardize_and_weight",
    "ObjectiveWeights",
    "dribble_objectives",
    "dribble_weight_update",
    "fixed_objectives",
]
