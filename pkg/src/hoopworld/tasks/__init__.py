from .base import RolloutStats, SkillEnv, collect_rollout
from .catch import CatchEnv
from .dribble import DribbleEnv
from .gather import GatherEnv
from .locomotion import LocomotionEnv
from .shoot import PassEnv, ShootEnv
from .trainer import SkillArtifacts, TrainProfile, make_ensembles, train_skill

__all__ = [
    "RolloutStats",
    "SkillEnv",
    "collect_rollout",
    "CatchEnv",
    "DribbleEnv",
    "GatherEnv",
    "LocomotionEnv",
    "PassEnv",
    "ShootEnv",
    "SkillArtifacts",
    "TrainProfile",
    "make_ensembles",
    "train_skill",
]
