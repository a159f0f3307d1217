"""Command-line interface.

Subcommands: train, eval catch-rate, eval shot-grid, baseline <kind>,
distill, serve, rules replay, rewards eval.  Log level comes from the
HOOPWORLD_LOG_LEVEL environment variable.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np


def _setup_logging() -> None:
    level = os.environ.get("HOOPWORLD_LOG_LEVEL", "INFO").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format="%(levelname)s %(name)s: %(message)s")


def _load_run(args):
    from .config import load_config
    from .pipeline import PipelineRun

    config = load_config(args.config)
    run = PipelineRun(config, args.run_dir)
    return config, run


def cmd_train(args) -> int:
    from .config import load_config
    from .pipeline import run_training

    config = load_config(args.config)
    run = run_training(config, args.run_dir)
    print(f"pipeline complete; artifacts in {run.dir}")
    return 0


def _composed_factory(run, config):
    run.stage_dribble()
    run.stage_shoot()
    run.stage_pool()
    run.stage_gather()
    run.stage_router()
    router_policy, _ = run.artifacts["router"]
    return run.controller_factory(router_policy=router_policy)


def cmd_eval_catch(args) -> int:
    from .evaluate import evaluate_catch_rate

    config, run = _load_run(args)
    factory = _composed_factory(run, config)
    ev = config["evaluation"]
    report = evaluate_catch_rate(
        factory,
        run.cfg,
        pool=run.artifacts["pool"],
        speed_bins=tuple(tuple(b) for b in ev["speed_bins"]),
        trials=ev["catch_trials"],
        seed=config["seed"] + 900,
    )
    print(json.dumps({"catch_rates": report.catch_rates, "counts": report.catch_counts}, indent=2))
    return 0


def cmd_eval_shot(args) -> int:
    from .evaluate import evaluate_shot_grid

    config, run = _load_run(args)
    factory = _composed_factory(run, config)
    ev = config["evaluation"]
    csv_path = Path(args.run_dir) / "shot_grid.csv"
    report = evaluate_shot_grid(
        factory,
        run.cfg,
        pool=run.artifacts["pool"],
        cell_radius=ev["cell_radius"],
        trials_per_cell=args.trials or ev["shot_trials_per_cell"],
        seed=config["seed"] + 901,
        csv_path=csv_path,
    )
    print(
        json.dumps(
            {
                "shot_percentage": report.shot_percentage,
                "attempts": report.attempts,
                "makes": report.makes,
                "quadrants": report.quadrant_percentages,
                "heatmap_csv": str(csv_path),
            },
            indent=2,
        )
    )
    return 0


def cmd_baseline(args) -> int:
    from .baselines import BASELINE_KINDS
    from .experiments import run_baseline

    if args.kind not in BASELINE_KINDS:
        print(f"unknown baseline: {args.kind}; choose from {BASELINE_KINDS}", file=sys.stderr)
        return 2
    config, run = _load_run(args)
    report = run_baseline(args.kind, run, config)
    print(json.dumps(report, indent=2, default=float))
    return 0


def cmd_distill(args) -> int:
    config, run = _load_run(args)
    run.stage_dribble()
    run.stage_shoot()
    run.stage_pool()
    run.stage_gather()
    run.stage_router()
    run.stage_distill()
    report = run.artifacts.get("distill_report", {})
    print(json.dumps({"holdout_mse": report.get("holdout_mse")}, indent=2))
    return 0


def cmd_serve(args) -> int:
    from .server import serve_demo

    config, run = _load_run(args)
    if args.distilled:
        from ..router import DistilledController
        from ..transitions import shoot_value_input

        run.stage_dribble()
        run.stage_shoot()
        run.stage_pool()
        run.stage_gather()
        run.stage_router()
        run.stage_distill()
        student = run.artifacts["distilled"]
        _, adapted_critic = run.artifacts["shoot_adapted"]

        def value_fn(state):
            x = shoot_value_input(state)[None]
            return float(adapted_critic.forward(x)[0][0, 1])

        controller = DistilledController(student, value_fn, run.cfg)
    else:
        controller = _composed_factory(run, config)()
    host = args.host or config["server"]["host"]
    port = args.port or config["server"]["port"]
    print(f"serving on ws://{host}:{port}")
    serve_demo(controller, run.cfg, host, port, seed=config["seed"])
    return 0


def cmd_rules_replay(args) -> int:
    from ..rules.replay import replay_stream

    infile = open(args.input) if args.input != "-" else sys.stdin
    outfile = open(args.output, "w") if args.output != "-" else sys.stdout
    try:
        count = replay_stream(infile, outfile)
    finally:
        if infile is not sys.stdin:
            infile.close()
        if outfile is not sys.stdout:
            outfile.close()
    print(f"annotated {count} ticks", file=sys.stderr)
    return 0


def cmd_rewards_eval(args) -> int:
    from .. import rewards

    payload = json.loads(Path(args.input).read_text()) if args.input != "-" else json.load(sys.stdin)
    name = payload["formula"]
    kwargs = {
        k: (np.array(v) if isinstance(v, list) else v)
        for k, v in payload.get("args", {}).items()
    }
    fn = getattr(rewards, name, None)
    if fn is None or not callable(fn):
        print(f"unknown reward formula: {name}", file=sys.stderr)
        return 2
    value = fn(**kwargs)
    print(json.dumps({"formula": name, "value": value if np.isscalar(value) else str(value)}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hoopworld")
    parser.add_argument("--config", default=None, help="experiment config (yaml)")
    parser.add_argument("--run-dir", default="runs/default", help="artifact directory")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("train", help="run the staged training pipeline")

    p_eval = sub.add_parser("eval", help="evaluation protocols")
    eval_sub = p_eval.add_subparsers(dest="eval_kind", required=True)
    eval_sub.add_parser("catch-rate", help="catch rate per speed bin")
    p_shot = eval_sub.add_parser("shot-grid", help="shot percentage heatmap")
    p_shot.add_argument("--trials", type=int, default=None)

    p_base = sub.add_parser("baseline", help="train/evaluate a baseline")
    p_base.add_argument("kind")

    sub.add_parser("distill", help="distill the hierarchical controller")

    p_serve = sub.add_parser("serve", help="run the interactive demo server")
    p_serve.add_argument("--host", default=None)
    p_serve.add_argument("--port", type=int, default=None)
    p_serve.add_argument("--distilled", action="store_true")

    p_rules = sub.add_parser("rules", help="rule tooling")
    rules_sub = p_rules.add_subparsers(dest="rules_kind", required=True)
    p_replay = rules_sub.add_parser("replay", help="annotate a kinematics trace")
    p_replay.add_argument("input")
    p_replay.add_argument("output")

    p_rew = sub.add_parser("rewards", help="reward tooling")
    rew_sub = p_rew.add_subparsers(dest="rewards_kind", required=True)
    p_rev = rew_sub.add_parser("eval", help="evaluate a reward formula on JSON input")
    p_rev.add_argument("input")
    return parser


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "train":
        return cmd_train(args)
    if args.command == "eval":
        return cmd_eval_catch(args) if args.eval_kind == "catch-rate" else cmd_eval_shot(args)
    if args.command == "baseline":
        return cmd_baseline(args)
    if args.command == "distill":
        return cmd_distill(args)
    if args.command == "serve":
        return cmd_serve(args)
    if args.command == "rules":
        return cmd_rules_replay(args)
    if args.command == "rewards":
        return cmd_rewards_eval(args)
    parser.error(f"unhandled command {args.command}")
    return 2


if __name__ == "__main__":
    sys.exit(main())
