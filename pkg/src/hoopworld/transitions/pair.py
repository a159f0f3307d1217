"""Two-agent co-adaptation: passing and catching fine-tuned jointly.

Each agent lives in its own world instance; the ball is shared, owned by
whichever agent holds it (else the nearer one), and mirrored into the other
world every tick.  Roles alternate across mirrored episode sets with shared
scenario seeds, so when both inputs are identical clones their adapter
updates are identical.  Each role's reward is shaped by the counterpart
critic's clipped normalized value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..net import AdapterPolicy, MultiHeadCritic
from ..ppo import PPOLearner, RolloutBatch, fixed_objectives
from ..rewards import catch_reward, pass_goal, pivot_indicator
from ..tasks.shoot import shoot_task_reward
from ..world import WorldConfig, hold_pose, make_state, observe, step
from ..world.state import WorldState
from .train import TransitionContext, extend_critic_input

PAIR_EPISODE_TICKS = 90
HOLD_SUCCESS = 10


def _pair_setup(seed: int, cfg: WorldConfig) -> tuple[WorldState, WorldState]:
    rng = np.random.default_rng(seed)
    gap = rng.uniform(cfg.ring_inner, 5.0)
    passer = make_state(cfg, np.array([0.0, 0.0]), 0.0, np.array([20.0, 0.0]), np.zeros(3))
    hold_pose(passer, cfg)
    catcher = make_state(
        cfg, np.array([gap, 0.0]), np.pi, np.array([20.0, 0.0]), np.array([gap + 1.0, 0.0, 0.5])
    )
    # catcher's mirrored ball gets overwritten from the owner world each tick
    return passer, catcher


def _chest(state: WorldState, cfg: WorldConfig) -> np.ndarray:
    return np.array([state.agent.position[0], state.agent.position[1], cfg.chest_height])


def _mirror_ball(src: WorldState, dst: WorldState) -> None:
    dst.ball.position = src.ball.position.copy()
    dst.ball.velocity = src.ball.velocity.copy()
    dst.ball.held = False
    dst.ball.release_cooldown = src.ball.release_cooldown


@dataclass
class PairRole:
    policy: AdapterPolicy
    critic: MultiHeadCritic
    names: tuple[str, ...]


def _value(critic: MultiHeadCritic, x: np.ndarray, head: int) -> float:
    return float(critic.forward(x[None])[0][0, head])


def _run_pair_episode(
    passer_role: PairRole,
    catcher_role: PairRole,
    cfg: WorldConfig,
    seed: int,
    rng: np.random.Generator,
    clip_bound: float,
):
    """One episode; returns per-role (inputs, extras, actions, logps, rewards, success)."""
    passer, catcher = _pair_setup(seed, cfg)
    prev_p, prev_c = passer, catcher
    rows = {"pass": [], "catch": []}
    held_streak = 0
    success = False

    for t in range(PAIR_EPISODE_TICKS):
        target_p = _chest(catcher, cfg)
        if passer.ball.held:
            target_c = _chest(passer, cfg)
        else:
            target_c = passer.ball.position.copy()
        # both roles use the pass-goal layout; the pivot flag rides the
        # adapters' extra input (and the critics' appended column)
        xp = np.concatenate([observe(passer, prev_p), pass_goal(passer, target_p)])
        xc = np.concatenate([observe(catcher, prev_c), pass_goal(catcher, target_c)])
        ep = np.array([pivot_indicator(passer)], dtype=np.float32)
        ec = np.array([pivot_indicator(catcher)], dtype=np.float32)
        ap, lp = passer_role.policy.sample(xp[None].astype(np.float32), rng, ep[None])
        ac, lc = catcher_role.policy.sample(xc[None].astype(np.float32), rng, ec[None])

        owner_is_passer = passer.ball.held or (
            not catcher.ball.held
            and np.linalg.norm(passer.ball.position[:2] - passer.agent.position)
            <= np.linalg.norm(passer.ball.position[:2] - catcher.agent.position)
        )
        new_p = step(passer, ap[0].astype(float), cfg)
        new_c = step(catcher, ac[0].astype(float), cfg)
        if owner_is_passer and not catcher.ball.held:
            _mirror_ball(new_p, new_c)
        else:
            _mirror_ball(new_c, new_p)

        v_for_passer = _value(
            catcher_role.critic, np.concatenate([xc, ec]), len(catcher_role.names) - 1
        )
        v_for_catcher = _value(
            passer_role.critic, np.concatenate([xp, ep]), len(passer_role.names) - 1
        )
        r_pass = shoot_task_reward(passer, new_p, cfg, traveling_violation=True)
        r_pass += 0.25 * float(np.clip(v_for_passer, -clip_bound, clip_bound))
        r_catch = catch_reward(
            new_c.palm_positions(),
            new_c.palm_normals(),
            np.stack(
                [h.fingertips_world(new_c.agent, cfg.fingertip_radius) for h in new_c.hands]
            ),
            new_c.ball.position,
            cfg.ball_radius,
            bool(new_c.pivot.traveling),
        )
        r_catch += 0.25 * float(np.clip(v_for_catcher, -clip_bound, clip_bound))

        rows["pass"].append((xp, ep, ap[0], float(lp[0]), float(r_pass)))
        rows["catch"].append((xc, ec, ac[0], float(lc[0]), float(r_catch)))

        prev_p, prev_c = passer, catcher
        passer, catcher = new_p, new_c
        held_streak = held_streak + 1 if catcher.ball.held else 0
        if held_streak >= HOLD_SUCCESS:
            success = True
            break
        if passer.shoot.released and t > 5 and catcher.ball.position[2] < cfg.ball_radius + 0.02:
            break
    return rows, success


def _batch_from_rows(rows: list, n_heads: int, head: int) -> RolloutBatch:
    T = len(rows)
    in_dim = len(rows[0][0])
    inputs = np.zeros((T, 1, in_dim), dtype=np.float32)
    extras = np.zeros((T, 1, 1), dtype=np.float32)
    actions = np.zeros((T, 1, len(rows[0][2])), dtype=np.float32)
    logps = np.zeros((T, 1))
    rewards = np.zeros((T, 1, n_heads))
    for t, (x, e, a, lp, r) in enumerate(rows):
        inputs[t, 0] = x
        extras[t, 0] = e
        actions[t, 0] = a
        logps[t, 0] = lp
        rewards[t, 0, head] = r
    dones = np.zeros((T, 1))
    dones[-1, 0] = 1.0
    return RolloutBatch(
        inputs=inputs,
        actions=actions,
        log_probs=logps,
        rewards=rewards,
        values=np.zeros((T, 1, n_heads)),
        dones=dones,
        bootstrap_values=np.zeros((1, n_heads)),
        extras=extras,
    )


def co_adapt_pair(
    pass_policy,
    pass_critic: MultiHeadCritic,
    catch_policy,
    catch_critic: MultiHeadCritic,
    budget: int,
    ctx: TransitionContext,
    episodes_per_iter: int = 8,
) -> tuple[dict, dict, list]:
    """Joint fine-tuning of pass and catch through two-agent episodes.

    Returns (pass artifacts, catch artifacts, history).  Budget 0 returns
    identity adapters.
    """
    adapted_pass = AdapterPolicy(pass_policy, extra_dim=1)
    adapted_catch = AdapterPolicy(catch_policy, extra_dim=1)
    crit_pass = extend_critic_input(pass_critic, 1)
    crit_catch = extend_critic_input(catch_critic, 1)
    arts_pass = {"policy": adapted_pass, "critic": crit_pass}
    arts_catch = {"policy": adapted_catch, "critic": crit_catch}
    history: list[dict] = []
    if budget == 0:
        return arts_pass, arts_catch, history

    def _task_only(critic: MultiHeadCritic):
        names = tuple(f"head_{i}" for i in range(critic.n_heads))
        values = tuple(0.0 for _ in range(critic.n_heads - 1)) + (1.0,)
        return names, fixed_objectives(names, values)

    names_pass, weights_pass = _task_only(crit_pass)
    names_catch, weights_catch = _task_only(crit_catch)
    role_a = PairRole(adapted_pass, crit_pass, names_pass)
    role_b = PairRole(adapted_catch, crit_catch, names_catch)
    learner_a = PPOLearner(adapted_pass, crit_pass, ctx.ppo_adapt)
    learner_b = PPOLearner(adapted_catch, crit_catch, ctx.ppo_adapt)

    for it in range(budget):
        seeds = [ctx.seed_base + 10_000 * it + k for k in range(episodes_per_iter)]
        batches = {"a": {"pass": [], "catch": []}, "b": {"pass": [], "catch": []}}
        successes = 0
        # mirrored sets: (a passes, b catches) then (b passes, a catches)
        for p_role, c_role, p_key, c_key in (
            (role_a, role_b, "a", "b"),
            (role_b, role_a, "b", "a"),
        ):
            rng = np.random.default_rng(ctx.seed_base + 77_000 + it)
            for s in seeds:
                rows, success = _run_pair_episode(p_role, c_role, ctx.cfg, s, rng, 1.0)
                successes += int(success)
                if rows["pass"]:
                    batches[p_key]["pass"].append(
                        _batch_from_rows(rows["pass"], len(p_role.names), len(p_role.names) - 1)
                    )
                if rows["catch"]:
                    batches[c_key]["catch"].append(
                        _batch_from_rows(rows["catch"], len(c_role.names), len(c_role.names) - 1)
                    )
        # role-ordered updates with per-learner identical shuffle streams
        for key, learner, weights in (
            ("a", learner_a, weights_pass),
            ("b", learner_b, weights_catch),
        ):
            rng_update = np.random.default_rng(ctx.seed_base + 88_000 + it)
            for role_batches in (batches[key]["pass"], batches[key]["catch"]):
                for batch in role_batches:
                    x = batch.inputs.reshape(-1, batch.inputs.shape[-1])
                    e = batch.extras.reshape(-1, 1)
                    vals = learner.critic.forward(np.concatenate([x, e], axis=1))[1]
                    batch.values = vals.reshape(batch.values.shape)
                    learner.update(batch, weights, rng_update)
        history.append({"iteration": it, "joint_successes": successes})
    return arts_pass, arts_catch, history
