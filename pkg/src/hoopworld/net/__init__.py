from .adam import Adam
from .checkpoint import FORMAT_VERSION, load_arrays, save_arrays
from .critic import SIGMA_FLOOR, MultiHeadCritic
from .mlp import MLP, EnsembleMLP
from .policy import (
    LOG_STD_MAX,
    LOG_STD_MIN,
    AdapterPolicy,
    CategoricalPolicy,
    GaussianPolicy,
)

__all__ = [
    "Adam",
    "FORMAT_VERSION",
    "load_arrays",
    "save_arrays",
    "SIGMA_FLOOR",
    "MultiHeadCritic",
    "MLP",
    "EnsembleMLP",
    "LOG_STD_MAX",
    "LOG_STD_MIN",
    "AdapterPolicy",
    "CategoricalPolicy",
    "GaussianPolicy",
]
