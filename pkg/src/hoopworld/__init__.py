"""Toy basketball micro-world with composable reinforcement-learning skills.

The package is organized as a numpy library:

- ``hoopworld.world``       deterministic 2.5D court, ball, hands, feet
- ``hoopworld.rules``       dribble / pivot-foot / traveling automata
- ``hoopworld.rewards``     pure reward formulas and goal builders
- ``hoopworld.net``         minimal MLP stack with manual gradients
- ``hoopworld.ppo``         PPO learner with GAE and multi-objective advantages
- ``hoopworld.imitation``   discriminator ensembles and scripted references
- ``hoopworld.transitions`` skill-transition training (direct / adapt / intermediate)
- ``hoopworld.router``      soft-routing composer and distillation
- ``hoopworld.harness``     configs, pipelines, evaluation, CLI, demo server
"""

__version__ = "0.1.0"
