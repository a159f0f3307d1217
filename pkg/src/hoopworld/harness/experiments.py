"""Baseline orchestration on top of a pipeline run."""

from __future__ import annotations

import numpy as np

from ..net import MultiHeadCritic
from ..ppo import PPOConfig
from ..router import ComposedController, DirectExecutionController, train_router
from ..tasks import DribbleEnv, GatherEnv, ShootEnv
from ..transitions import (
    TransitionContext,
    TransitionSpec,
    TransitionType,
    extend_critic_input,
    train_intermediate,
)
from .artifacts import load_categorical, load_critic, load_policy, save_categorical, save_critic, save_policy
from .baselines import SeqChainController, grid_search_threshold, train_sequential_chain
from .config import ppo_config
from .evaluate import evaluate_catch_rate, evaluate_shot_grid
from .pipeline import SHOOT_TASK_HEAD, PipelineRun


def _eval_reports(run: PipelineRun, config: dict, factory, tag: str) -> dict:
    ev = config["evaluation"]
    catch = evaluate_catch_rate(
        factory,
        run.cfg,
        pool=run.artifacts["pool"],
        speed_bins=tuple(tuple(b) for b in ev["speed_bins"]),
        trials=ev["catch_trials"],
        seed=config["seed"] + 900,
    )
    shots = evaluate_shot_grid(
        factory,
        run.cfg,
        pool=run.artifacts["pool"],
        cell_radius=ev["cell_radius"],
        trials_per_cell=ev["shot_trials_per_cell"],
        seed=config["seed"] + 901,
        csv_path=run.path(f"shot_grid_{tag}.csv"),
    )
    overall_catch = float(np.mean([t.caught for t in catch.trials])) if catch.trials else 0.0
    return {
        "catch_rates": catch.catch_rates,
        "overall_catch": overall_catch,
        "shot_percentage": shots.shot_percentage,
        "attempts": shots.attempts,
        "makes": shots.makes,
    }


def baseline_direct_execution(run: PipelineRun, config: dict) -> dict:
    dribble_policy, _ = run.artifacts["dribble"]
    shoot_policy, shoot_critic = run.artifacts["shoot"]

    def for_threshold(threshold):
        return DirectExecutionController(
            run.cfg, dribble_policy, shoot_policy, shoot_critic, SHOOT_TASK_HEAD, threshold
        )

    threshold, scores = grid_search_threshold(
        for_threshold, run.cfg, run.artifacts["pool"], seed=config["seed"] + 700
    )
    report = _eval_reports(run, config, lambda: for_threshold(threshold), "direct_execution")
    report["threshold"] = threshold
    report["threshold_scores"] = scores
    return report


def baseline_heuristic_switch(run: PipelineRun, config: dict) -> dict:
    def for_threshold(threshold):
        return run.controller_factory(router_policy=None, threshold=threshold)()

    threshold, scores = grid_search_threshold(
        for_threshold, run.cfg, run.artifacts["pool"], seed=config["seed"] + 701
    )
    report = _eval_reports(
        run, config, lambda: for_threshold(threshold), "heuristic_switch"
    )
    report["threshold"] = threshold
    report["threshold_scores"] = scores
    return report


def baseline_hard_router(run: PipelineRun, config: dict) -> dict:
    ckpt = run.path("hard_router.ckpt")
    stage = config["stages"]["router"]
    if ckpt.exists():
        policy, _ = load_categorical(ckpt)
        history = []
    else:
        rng = np.random.default_rng(config["seed"] + 44)
        policy, critic, history = train_router(
            run.cfg,
            run.controller_factory(),
            run.artifacts["pool"],
            stage["iterations"],
            ppo_config(config, "router"),
            run.profile.hidden,
            rng,
            seed_base=config["seed"] * 131 + 6_000_000,
            workers=run.profile.workers,
            rollout_ticks=stage["rollout_ticks"],
            hard=True,
            callback=run.metrics.stage_callback("hard_router"),
        )
        save_categorical(ckpt, policy, {"skill": "hard_router"})
    factory = run.controller_factory(hard_router=policy)
    report = _eval_reports(run, config, factory, "hard_router")
    if history:
        report["final_reward"] = history[-1]["task_reward"]
        report["history_tail"] = [h["task_reward"] for h in history[-10:]]
    return report


def baseline_no_adapt(run: PipelineRun, config: dict) -> dict:
    """Gather trained against the frozen pretrained critic, no adaptation."""
    stage = config["stages"]["gather"]
    tcfg = config["transition"]
    ckpt = run.path("noadapt_gather.ckpt")
    dribble_policy, _ = run.artifacts["dribble"]
    shoot_policy, shoot_critic = run.artifacts["shoot"]
    if ckpt.exists():
        gather_policy, _ = load_policy(ckpt)
    else:
        rng = np.random.default_rng(config["seed"] + 45)
        gather_ens = run._ensembles(GatherEnv(run.cfg), "gather", 13)
        shoot_ens = run._ensembles(ShootEnv(run.cfg), "shoot", 12)
        ctx = TransitionContext(
            cfg=run.cfg,
            gather_ensembles=gather_ens,
            shoot_ensembles=shoot_ens,
            ppo_gather=ppo_config(config, "gather"),
            ppo_adapt=ppo_config(config, "gather"),
            rng=rng,
            seed_base=config["seed"] * 131 + 7_000_000,
            workers=run.profile.workers,
            rollout_ticks=run.profile.rollout_ticks,
            interleave=stage["interleave"],
            harvest_size=stage["harvest_size"],
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
        gather_arts, _, history = train_intermediate(
            tspec,
            dribble_policy,
            lambda cfg: DribbleEnv(cfg),
            shoot_policy,
            shoot_critic,
            SHOOT_TASK_HEAD,
            stage["cycles"],
            ctx,
            adapt=False,
        )
        for record in history:
            run.metrics.write("noadapt_gather", record)
        gather_policy = gather_arts["policy"]
        save_policy(ckpt, gather_policy, {"skill": "noadapt_gather"})

    frozen_critic = extend_critic_input(shoot_critic, 1)

    def factory():
        return ComposedController(
            run.cfg,
            dribble_policy,
            gather_policy,
            shoot_policy,
            frozen_critic,
            SHOOT_TASK_HEAD,
            router_policy=None,
            threshold=-tcfg["clip_bound"],
        )

    report = _eval_reports(run, config, factory, "no_adapt")
    # gather-phase catch vs post-handoff hold: how often the gather secures
    # the ball vs the unadapted shooter keeping it to a release
    caught = released = 0
    ev = config["evaluation"]
    rep = evaluate_catch_rate(
        factory,
        run.cfg,
        pool=run.artifacts["pool"],
        speed_bins=((0.0, 4.0),),
        trials=ev["catch_trials"],
        seed=config["seed"] + 903,
    )
    for t in rep.trials:
        caught += int(t.caught)
        released += int(t.caught and t.released)
    report["gather_catch"] = caught / max(1, len(rep.trials))
    report["post_handoff_release"] = released / max(1, len(rep.trials))
    return report


def baseline_sequential_chain(run: PipelineRun, config: dict) -> dict:
    ckpt = run.path("seqchain_policy.ckpt")
    dribble_policy, _ = run.artifacts["dribble"]
    if ckpt.exists():
        policy, _ = load_policy(ckpt)
    else:
        rng = np.random.default_rng(config["seed"] + 46)
        shoot_ens = run._ensembles(ShootEnv(run.cfg), "shoot", 14)
        stage = config["stages"]["gather"]
        iterations = stage["cycles"] * stage["interleave"]
        policy, critic, history = train_sequential_chain(
            run.cfg,
            run.artifacts["pool"],
            shoot_ens,
            ppo_config(config, "gather"),
            run.profile.hidden,
            iterations,
            rng,
            seed_base=config["seed"] * 131 + 8_000_000,
            workers=run.profile.workers,
            rollout_ticks=run.profile.rollout_ticks,
            callback=run.metrics.stage_callback("seqchain"),
        )
        save_policy(ckpt, policy, {"skill": "seqchain"})

    def factory():
        return SeqChainController(run.cfg, dribble_policy, policy)

    return _eval_reports(run, config, factory, "sequential_chain")


BASELINE_RUNNERS = {
    "DirectExecution": baseline_direct_execution,
    "NoAdapt": baseline_no_adapt,
    "SequentialChaining": baseline_sequential_chain,
    "HardRouter": baseline_hard_router,
    "HeuristicSwitch": baseline_heuristic_switch,
}


def run_baseline(kind: str, run: PipelineRun, config: dict) -> dict:
    run.stage_dribble()
    run.stage_shoot()
    run.stage_pool()
    if kind in ("HardRouter", "HeuristicSwitch"):
        run.stage_gather()
    report = BASELINE_RUNNERS[kind](run, config)
    run.metrics.write(f"baseline_{kind}", report)
    return report
