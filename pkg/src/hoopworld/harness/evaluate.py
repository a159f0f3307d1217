"""Evaluation protocols: catch rate by speed bin and the shot-percentage grid.

Trials are generated deterministically from the seed, so two controllers
evaluated with the same seed face identical scenario streams.  A trial that
never releases the ball, or never catches it, counts as a miss.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..world import WorldConfig, detect_field_goal, relocalize, reset_scenario, step
from ..world.scenarios import ScenarioKind

DEFAULT_SPEED_BINS = ((0.0, 1.0), (1.0, 2.0), (2.0, 3.0), (3.0, 4.0))
QUADRANTS = ("facing", "opposite", "left_orth", "right_orth")


@dataclass
class TrialResult:
    caught: bool = False
    made: bool = False
    released: bool = False
    speed: float = 0.0
    start_xy: tuple[float, float] = (0.0, 0.0)
    quadrant: str = "facing"


@dataclass
class EvalReport:
    catch_rates: dict = field(default_factory=dict)
    catch_counts: dict = field(default_factory=dict)
    shot_percentage: float = 0.0
    attempts: int = 0
    makes: int = 0
    quadrant_percentages: dict = field(default_factory=dict)
    cells: list = field(default_factory=list)
    trials: list = field(default_factory=list)


def run_trial(
    controller,
    start_state,
    target_velocity: np.ndarray,
    command_tick: int,
    cfg: WorldConfig,
    max_ticks: int = 200,
) -> TrialResult:
    """One command-to-outcome episode under a controller."""
    state = start_state.copy()
    prev = state
    controller.reset(target_velocity)
    result = TrialResult(speed=float(np.linalg.norm(target_velocity)))
    flight_ticks = 0
    for t in range(max_ticks):
        if t == command_tick:
            controller.command_shoot()
        action, _ = controller.act(state, prev)
        new_state = step(state, np.clip(action, -1.0, 1.0), cfg)
        if t >= command_tick:
            if new_state.ball.held:
                result.caught = True
            if detect_field_goal(state, new_state, cfg):
                result.made = True
        prev, state = state, new_state
        if state.shoot.released:
            result.released = True
            flight_ticks += 1
            grounded = state.ball.position[2] < cfg.ball_radius + 0.01
            if grounded or flight_ticks > 90:
                break
    return result


def _trial_start(
    pool, seed: int, cfg: WorldConfig, position=None, heading=None
):
    rng = np.random.default_rng(seed)
    if pool:
        idx = int(rng.integers(0, len(pool)))
        if position is None:
            radius = rng.uniform(cfg.ring_inner, cfg.ring_outer)
            ang = rng.uniform(-np.pi, np.pi)
            position = radius * np.array([np.cos(ang), np.sin(ang)])
        if heading is None:
            heading = rng.uniform(-np.pi, np.pi)
        return relocalize(pool[idx], position, heading)
    state = reset_scenario(ScenarioKind.DRIBBLE_INIT, seed, cfg)
    if position is not None:
        state = relocalize(state, position, heading if heading is not None else state.agent.heading)
    return state


def evaluate_catch_rate(
    controller_factory,
    cfg: WorldConfig,
    pool=None,
    speed_bins=DEFAULT_SPEED_BINS,
    trials: int = 40,
    seed: int = 0,
) -> EvalReport:
    """Catch rate per dribble-speed bin; the command arrives at a random tick."""
    report = EvalReport()
    for b, (lo, hi) in enumerate(speed_bins):
        caught = 0
        for k in range(trials):
            trial_seed = seed + 100_000 * b + k
            rng = np.random.default_rng(trial_seed + 7)
            speed = rng.uniform(lo, hi)
            ang = rng.uniform(-np.pi, np.pi)
            target_v = speed * np.array([np.cos(ang), np.sin(ang)])
            command_tick = int(rng.integers(15, 60))
            start = _trial_start(pool, trial_seed, cfg)
            controller = controller_factory()
            result = run_trial(controller, start, target_v, command_tick, cfg)
            caught += int(result.caught)
            report.trials.append(result)
        key = f"{lo:g}-{hi:g}"
        report.catch_rates[key] = caught / trials if trials else 0.0
        report.catch_counts[key] = (caught, trials)
    return report


def grid_cells(cfg: WorldConfig, cell_radius: float = 0.5) -> list[tuple[float, float]]:
    """Square cells (half-side = cell_radius) whose centers tile the plane;
    keep those overlapping the valid ring."""
    side = 2.0 * cell_radius
    reach = cfg.ring_outer + cell_radius
    cells = []
    n = int(np.ceil(reach / side))
    for i in range(-n, n + 1):
        for j in range(-n, n + 1):
            cx, cy = (i + 0.5) * side, (j + 0.5) * side
            r = np.hypot(cx, cy)
            # a square overlaps the annulus iff its center is within half the
            # diagonal of the ring bounds
            margin = cell_radius * np.sqrt(2.0)
            if cfg.ring_inner - margin <= r <= cfg.ring_outer + margin:
                cells.append((cx, cy))
    return cells


def _sample_in_cell(
    rng: np.random.Generator, cx: float, cy: float, cell_radius: float, cfg: WorldConfig
):
    for _ in range(64):
        x = rng.uniform(cx - cell_radius, cx + cell_radius)
        y = rng.uniform(cy - cell_radius, cy + cell_radius)
        r = np.hypot(x, y)
        if cfg.ring_inner <= r <= cfg.ring_outer:
            return np.array([x, y])
    return None


def approach_quadrant(position: np.ndarray, heading_vec: np.ndarray) -> str:
    """Classify the approach direction against the bearing to the hoop."""
    to_hoop = -np.asarray(position, dtype=float)
    to_hoop /= max(np.linalg.norm(to_hoop), 1e-9)
    h = np.asarray(heading_vec, dtype=float)
    h = h / max(np.linalg.norm(h), 1e-9)
    angle = np.arctan2(h[1], h[0]) - np.arctan2(to_hoop[1], to_hoop[0])
    angle = np.arctan2(np.sin(angle), np.cos(angle))
    if abs(angle) <= np.pi / 4:
        return "facing"
    if abs(angle) >= 3 * np.pi / 4:
        return "opposite"
    return "left_orth" if angle > 0 else "right_orth"


def evaluate_shot_grid(
    controller_factory,
    cfg: WorldConfig,
    pool=None,
    cell_radius: float = 0.5,
    trials_per_cell: int = 50,
    seed: int = 0,
    csv_path: str | Path | None = None,
) -> EvalReport:
    """Shot percentage over the ring grid; non-responses count as misses."""
    report = EvalReport()
    quad_counts = {q: [0, 0] for q in QUADRANTS}
    cells = grid_cells(cfg, cell_radius)
    for c_idx, (cx, cy) in enumerate(cells):
        makes = attempts = 0
        for k in range(trials_per_cell):
            trial_seed = seed + 10_000 * c_idx + k
            rng = np.random.default_rng(trial_seed + 3)
            position = _sample_in_cell(rng, cx, cy, cell_radius, cfg)
            if position is None:
                continue
            heading = rng.uniform(-np.pi, np.pi)
            speed = rng.uniform(0.0, 4.0)
            target_v = speed * np.array([np.cos(heading), np.sin(heading)])
            start = _trial_start(pool, trial_seed, cfg, position=position, heading=heading)
            controller = controller_factory()
            result = run_trial(controller, start, target_v, command_tick=5, cfg=cfg)
            result.start_xy = (cx, cy)
            result.quadrant = approach_quadrant(position, np.array([np.cos(heading), np.sin(heading)]))
            attempts += 1
            makes += int(result.made)
            quad_counts[result.quadrant][1] += 1
            quad_counts[result.quadrant][0] += int(result.made)
            report.trials.append(result)
        report.cells.append(
            {
                "x_cell": cx,
                "y_cell": cy,
                "attempts": attempts,
                "makes": makes,
                "percentage": makes / attempts if attempts else 0.0,
            }
        )
        report.attempts += attempts
        report.makes += makes
    report.shot_percentage = report.makes / report.attempts if report.attempts else 0.0
    report.quadrant_percentages = {
        q: (c[0] / c[1] if c[1] else 0.0) for q, c in quad_counts.items()
    }
    if csv_path is not None:
        write_heatmap_csv(csv_path, report)
    return report


def write_heatmap_csv(path: str | Path, report: EvalReport) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(["x_cell", "y_cell", "attempts", "makes", "percentage"])
        for cell in report.cells:
            writer.writerow(
                [
                    cell["x_cell"],
                    cell["y_cell"],
                    cell["attempts"],
                    cell["makes"],
                    f"{cell['percentage']:.4f}",
                ]
            )
