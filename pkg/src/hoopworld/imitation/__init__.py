from .discriminator import (
    DiscriminatorEnsemble,
    ReplayBuffer,
    discriminator_update,
    imitation_reward,
    make_pairs,
    train_from_buffers,
)
from .observation import (
    BODY,
    CHANNEL_DIMS,
    FULL,
    HANDS,
    PartialObservation,
    body_features,
    extract_partial_observation,
    hands_features,
)
from .reference import (
    DEFAULT_DRIBBLE_CADENCE_HZ,
    ReferenceLibrary,
    build_reference_library,
    generate_reference,
)

__all__ = [
    "DiscriminatorEnsemble",
    "ReplayBuffer",
    "discriminator_update",
    "imitation_reward",
    "make_pairs",
    "train_from_buffers",
    "BODY",
    "CHANNEL_DIMS",
    "FULL",
    "HANDS",
    "PartialObservation",
    "body_features",
    "extract_partial_observation",
    "hands_features",
    "DEFAULT_DRIBBLE_CADENCE_HZ",
    "ReferenceLibrary",
    "build_reference_library",
    "generate_reference",
]
