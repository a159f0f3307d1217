"""Staged training pipeline: primitives, Type C transition, router, distill.

Every stage writes checkpoints into the run directory and appends tagged
JSON-lines metrics; reruns resume from whatever checkpoints exist.  With all
iteration budgets at zero the pipeline emits freshly initialized artifacts.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

import numpy as np

from ..imitation import build_reference_library
from ..net import GaussianPolicy, MultiHeadCritic
from ..ppo import PPOLearner, fixed_objectives
from ..router import ComposedController, distill, train_router
from ..tasks import (
    CatchEnv,
    DribbleEnv,
    GatherEnv,
    ShootEnv,
    TrainProfile,
    make_ensembles,
    train_skill,
)
from ..transitions import TransitionContext, TransitionSpec, TransitionType, train_intermediate
from ..transitions.harvest import harvest_initial_states
from ..world import WorldConfig
from ..world.serialize import from_bytes, to_bytes
from .artifacts import (
    load_adapter,
    load_critic,
    load_policy,
    save_adapter,
    save_critic,
    save_policy,
)
from .config import ppo_config, train_profile, world_config

log = logging.getLogger(__name__)

SHOOT_TASK_HEAD = 1  # ("imit_full", "task")


class MetricsWriter:
    def __init__(self, path: Path):
        self.path = path
        path.parent.mkdir(parents=True, exist_ok=True)

    def write(self, stage: str, record: dict) -> None:
        with open(self.path, "a") as f:
            f.write(json.dumps({"stage": stage, **record}, sort_keys=True) + "\n")

    def stage_callback(self, stage: str):
        return lambda it, record: self.write(stage, record)


def save_pool(path: Path, pool) -> None:
    with open(path, "wb") as f:
        f.write(len(pool).to_bytes(4, "little"))
        for state in pool:
            blob = to_bytes(state)
            f.write(len(blob).to_bytes(4, "little"))
            f.write(blob)


def load_pool(path: Path):
    pool = []
    with open(path, "rb") as f:
        n = int.from_bytes(f.read(4), "little")
        for _ in range(n):
            size = int.from_bytes(f.read(4), "little")
            pool.append(from_bytes(f.read(size)))
    return pool


class PipelineRun:
    """Filesystem-backed artifact store for one experiment."""

    def __init__(self, config: dict, out_dir: str | Path):
        self.config = config
        self.dir = Path(out_dir)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.cfg: WorldConfig = world_config(config)
        self.profile: TrainProfile = train_profile(config)
        self.metrics = MetricsWriter(self.dir / "metrics.jsonl")
        self.seed = int(config["seed"])
        self.library = build_reference_library(
            seed=self.seed + 50,
            clips_per_set=config["imitation"]["clips_per_set"],
            length=config["imitation"]["clip_length"],
            cadence_hz=config["imitation"]["cadence_hz"],
        )
        self.artifacts: dict = {}

    def path(self, name: str) -> Path:
        return self.dir / name

    def has(self, *names: str) -> bool:
        return all(self.path(n).exists() for n in names)

    # stage helpers -----------------------------------------------------

    def _ensembles(self, env, skill: str, seed_offset: int):
        imit = self.config["imitation"]
        prof = TrainProfile(
            hidden=self.profile.hidden,
            disc_hidden=tuple(imit["hidden"]),
            disc_members=imit["members"],
            workers=self.profile.workers,
            rollout_ticks=self.profile.rollout_ticks,
        )
        return make_ensembles(
            env,
            skill,
            self.library,
            prof,
            seed=self.seed + seed_offset,
            lr=imit["lr"],
            gp_coef=imit["gp_coef"],
        )

    def stage_dribble(self) -> None:
        if self.has("dribble_policy.ckpt", "dribble_critic.ckpt"):
            policy, _ = load_policy(self.path("dribble_policy.ckpt"))
            critic, _ = load_critic(self.path("dribble_critic.ckpt"))
            self.artifacts["dribble"] = (policy, critic)
            return
        stage = self.config["stages"]["dribble"]
        rng = np.random.default_rng(self.seed)
        envs = [DribbleEnv(self.cfg) for _ in range(self.profile.workers)]
        policy = GaussianPolicy(
            envs[0].input_dim, 21, self.profile.hidden, rng, init_log_std=self.profile.init_log_std
        )
        critic = MultiHeadCritic(envs[0].input_dim, 4, self.profile.hidden, rng, beta=1e-2)
        ensembles = self._ensembles(envs[0], "dribble", 1)
        learner = PPOLearner(policy, critic, ppo_config(self.config, "dribble"))
        weights = fixed_objectives(DribbleEnv.objective_names, tuple(stage["weights"]))
        weights, _ = train_skill(
            envs,
            learner,
            ensembles,
            weights,
            iterations=stage["iterations"],
            rng=rng,
            seed_base=self.seed * 131 + 1,
            dynamic_dribble_weights=stage["dynamic_weights"],
            rollout_ticks=self.profile.rollout_ticks,
            callback=self.metrics.stage_callback("dribble"),
        )
        weights = self._refine(
            "dribble", stage, envs, learner, ensembles, weights, rng,
            seed_base=self.seed * 131 + 500_000,
            dynamic=stage["dynamic_weights"],
        )
        save_policy(self.path("dribble_policy.ckpt"), policy, {"skill": "dribble", "goal_dim": 10})
        save_critic(self.path("dribble_critic.ckpt"), critic, {"skill": "dribble"})
        self.metrics.write("dribble", {"final_p_dribble": weights.p_dribble})
        self.artifacts["dribble"] = (policy, critic)
        self.artifacts["dribble_final_p"] = weights.p_dribble

    def _refine(
        self, stage_name, stage, envs, learner, ensembles, weights, rng, seed_base, dynamic=False
    ):
        """Second training phase: smaller steps, exploration annealing."""
        refine = stage.get("refine_iterations", 0)
        if not refine:
            return weights
        learner.policy_opt.lr = stage.get("refine_policy_lr", 2e-4)
        learner.critic_opt.lr = stage.get("refine_critic_lr", 5e-4)
        weights, _ = train_skill(
            envs,
            learner,
            ensembles,
            weights,
            iterations=refine,
            rng=rng,
            seed_base=seed_base,
            dynamic_dribble_weights=dynamic,
            rollout_ticks=self.profile.rollout_ticks,
            callback=self.metrics.stage_callback(f"{stage_name}_refine"),
            log_std_anneal=stage.get("log_std_anneal", 0.0),
            log_std_floor=stage.get("log_std_floor", -5.0),
        )
        return weights

    def stage_shoot(self) -> None:
        if self.has("shoot_policy.ckpt", "shoot_critic.ckpt"):
            policy, _ = load_policy(self.path("shoot_policy.ckpt"))
            critic, _ = load_critic(self.path("shoot_critic.ckpt"))
            self.artifacts["shoot"] = (policy, critic)
            return
        stage = self.config["stages"]["shoot"]
        rng = np.random.default_rng(self.seed + 2)
        envs = [ShootEnv(self.cfg) for _ in range(self.profile.workers)]
        policy = GaussianPolicy(
            envs[0].input_dim, 21, self.profile.hidden, rng, init_log_std=self.profile.init_log_std
        )
        # start pushes below the release trigger so early training is not
        # dominated by accidental throws
        from ..world.state import LEFT, RIGHT, hand_slice

        for side in (LEFT, RIGHT):
            policy.net.biases[-1][hand_slice(side).start + 5] = -0.8
        critic = MultiHeadCritic(envs[0].input_dim, 2, self.profile.hidden, rng, beta=1e-2)
        ensembles = self._ensembles(envs[0], "shoot", 2)
        learner = PPOLearner(policy, critic, ppo_config(self.config, "shoot"))
        weights = fixed_objectives(ShootEnv.objective_names, tuple(stage["weights"]))
        weights, _ = train_skill(
            envs,
            learner,
            ensembles,
            weights,
            iterations=stage["iterations"],
            rng=rng,
            seed_base=self.seed * 131 + 2_000_000,
            rollout_ticks=self.profile.rollout_ticks,
            callback=self.metrics.stage_callback("shoot"),
        )
        self._refine(
            "shoot", stage, envs, learner, ensembles, weights, rng,
            seed_base=self.seed * 131 + 2_500_000,
        )
        save_policy(self.path("shoot_policy.ckpt"), policy, {"skill": "shoot", "goal_dim": 8})
        save_critic(self.path("shoot_critic.ckpt"), critic, {"skill": "shoot"})
        self.artifacts["shoot"] = (policy, critic)
        self.artifacts["shoot_ensembles"] = ensembles

    def stage_pool(self) -> None:
        if self.has("dribble_pool.bin"):
            self.artifacts["pool"] = load_pool(self.path("dribble_pool.bin"))
            return
        policy, _ = self.artifacts["dribble"]
        pool = harvest_initial_states(
            policy,
            lambda cfg: DribbleEnv(cfg),
            self.config["stages"]["gather"]["harvest_size"],
            self.seed + 77,
            self.cfg,
        )
        save_pool(self.path("dribble_pool.bin"), pool)
        self.artifacts["pool"] = pool

    def stage_gather(self) -> None:
        if self.has(
            "gather_policy.ckpt", "gather_critic.ckpt", "shoot_adapted.ckpt", "shoot_adapted_critic.ckpt"
        ):
            gather_policy, _ = load_policy(self.path("gather_policy.ckpt"))
            gather_critic, _ = load_critic(self.path("gather_critic.ckpt"))
            adapted, _ = load_adapter(self.path("shoot_adapted.ckpt"))
            adapted_critic, _ = load_critic(self.path("shoot_adapted_critic.ckpt"))
            self.artifacts["gather"] = (gather_policy, gather_critic)
            self.artifacts["shoot_adapted"] = (adapted, adapted_critic)
            return
        stage = self.config["stages"]["gather"]
        tcfg = self.config["transition"]
        dribble_policy, _ = self.artifacts["dribble"]
        shoot_policy, shoot_critic = self.artifacts["shoot"]
        rng = np.random.default_rng(self.seed + 3)
        gather_proto = GatherEnv(self.cfg)
        gather_ens = self._ensembles(gather_proto, "gather", 3)
        shoot_proto = ShootEnv(self.cfg)
        shoot_ens = self.artifacts.get("shoot_ensembles") or self._ensembles(
            shoot_proto, "shoot", 2
        )
        ctx = TransitionContext(
            cfg=self.cfg,
            gather_ensembles=gather_ens,
            shoot_ensembles=shoot_ens,
            ppo_gather=ppo_config(self.config, "gather"),
            ppo_adapt=ppo_config(self.config, "gather"),
            rng=rng,
            seed_base=self.seed * 131 + 3_000_000,
            workers=self.profile.workers,
            rollout_ticks=self.profile.rollout_ticks,
            interleave=stage["interleave"],
            harvest_size=stage["harvest_size"],
            gather_weights=tuple(stage["weights"]),
            easy_init_prob=stage["easy_init_prob"],
            hidden=self.profile.hidden,
        )
        tspec = TransitionSpec(
            kind=TransitionType.INTERMEDIATE,
            predecessor="dribble",
            successor="shoot",
            intermediate="gather",
            clip_bound=tcfg["clip_bound"],
            bootstrap_prob=tcfg["bootstrap_prob"],
            facing_tolerance_deg=tcfg["facing_tolerance_deg"],
        )
        gather_arts, adapted_arts, history = train_intermediate(
            tspec,
            dribble_policy,
            lambda cfg: DribbleEnv(cfg),
            shoot_policy,
            shoot_critic,
            SHOOT_TASK_HEAD,
            stage["cycles"],
            ctx,
            callback=self.metrics.stage_callback("gather"),
        )
        save_policy(
            self.path("gather_policy.ckpt"), gather_arts["policy"], {"skill": "gather", "goal_dim": 9}
        )
        save_critic(self.path("gather_critic.ckpt"), gather_arts["critic"], {"skill": "gather"})
        save_adapter(
            self.path("shoot_adapted.ckpt"),
            adapted_arts["policy"],
            {"skill": "shoot_adapted", "goal_dim": 9},
        )
        save_critic(
            self.path("shoot_adapted_critic.ckpt"), adapted_arts["critic"], {"skill": "shoot_adapted"}
        )
        self.artifacts["gather"] = (gather_arts["policy"], gather_arts["critic"])
        self.artifacts["shoot_adapted"] = (adapted_arts["policy"], adapted_arts["critic"])

    def controller_factory(self, router_policy=None, threshold: float = -1.0, hard_router=None):
        dribble_policy, _ = self.artifacts["dribble"]
        gather_policy, _ = self.artifacts["gather"]
        adapted, adapted_critic = self.artifacts["shoot_adapted"]

        def factory():
            return ComposedController(
                self.cfg,
                dribble_policy,
                gather_policy,
                adapted,
                adapted_critic,
                SHOOT_TASK_HEAD,
                router_policy=router_policy,
                threshold=threshold,
                hard_router=hard_router,
            )

        return factory

    def stage_router(self) -> None:
        if self.has("router_policy.ckpt", "router_critic.ckpt"):
            policy, _ = load_policy(self.path("router_policy.ckpt"))
            critic, _ = load_critic(self.path("router_critic.ckpt"))
            self.artifacts["router"] = (policy, critic)
            return
        stage = self.config["stages"]["router"]
        rng = np.random.default_rng(self.seed + 4)
        policy, critic, history = train_router(
            self.cfg,
            self.controller_factory(),
            self.artifacts["pool"],
            stage["iterations"],
            ppo_config(self.config, "router"),
            self.profile.hidden,
            rng,
            seed_base=self.seed * 131 + 4_000_000,
            workers=self.profile.workers,
            rollout_ticks=stage["rollout_ticks"],
            callback=self.metrics.stage_callback("router"),
        )
        save_policy(self.path("router_policy.ckpt"), policy, {"skill": "router", "goal_dim": 12})
        save_critic(self.path("router_critic.ckpt"), critic, {"skill": "router"})
        self.artifacts["router"] = (policy, critic)

    def stage_distill(self) -> None:
        if self.has("distilled_policy.ckpt"):
            student, _ = load_policy(self.path("distilled_policy.ckpt"))
            self.artifacts["distilled"] = student
            return
        stage = self.config["stages"]["distill"]
        rng = np.random.default_rng(self.seed + 5)
        router_policy, _ = self.artifacts["router"]
        teacher = self.controller_factory(router_policy=router_policy)()
        student, report = distill(
            teacher,
            self.cfg,
            self.artifacts["pool"],
            self.profile.hidden,
            rng,
            seed=self.seed * 131 + 5_000_000,
            passes=stage["passes"],
            episodes_per_pass=stage["episodes_per_pass"],
            train_steps=stage["train_steps"],
            lr=stage["lr"],
        )
        for record in report["passes"]:
            self.metrics.write("distill", record)
        save_policy(
            self.path("distilled_policy.ckpt"), student, {"skill": "distilled", "goal_dim": 12}
        )
        self.artifacts["distilled"] = student
        self.artifacts["distill_report"] = report


def run_training(config: dict, out_dir: str | Path) -> PipelineRun:
    """Execute the staged pipeline; resumes from existing checkpoints."""
    run = PipelineRun(config, out_dir)
    run.stage_dribble()
    run.stage_shoot()
    run.stage_pool()
    run.stage_gather()
    run.stage_router()
    run.stage_distill()
    return run
