from .config import ConfigError, load_config, ppo_config, train_profile, world_config
from .evaluate import (
    EvalReport,
    evaluate_catch_rate,
    evaluate_shot_grid,
    grid_cells,
    run_trial,
    write_heatmap_csv,
)
from .pipeline import PipelineRun, run_training
from .scripted import (
    scripted_chain,
    scripted_dribble,
    scripted_gather,
    scripted_shoot,
    solve_launch,
)

__all__ = [
    "ConfigError",
    "load_config",
    "ppo_config",
    "train_profile",
    "world_config",
    "EvalReport",
    "evaluate_catch_rate",
    "evaluate_shot_grid",
    "grid_cells",
    "run_trial",
    "write_heatmap_csv",
    "PipelineRun",
    "run_training",
    "scripted_chain",
    "scripted_dribble",
    "scripted_gather",
    "scripted_shoot",
    "solve_launch",
]
