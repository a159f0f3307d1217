"""PPO numerics: GAE vs brute force, surrogate gradient, scheduler."""

import numpy as np
import pytest

from hoopworld.net import Adam, GaussianPolicy, MultiHeadCritic
from hoopworld.ppo import (
    PPOConfig,
    PPOLearner,
    RolloutBatch,
    compute_gae,
    dribble_objectives,
    dribble_weight_update,
    fixed_objectives,
    standardize_and_weight,
)


def brute_force_gae(rewards, values, dones, bootstrap, gamma, lam):
    """Direct sum over the exponentially weighted n-step advantages."""
    T = len(rewards)
    values_ext = list(values) + [bootstrap]
    adv = np.zeros(T)
    for t in range(T):
        total = 0.0
        weight = 1.0
        norm = 0.0
        # explicit lambda-weighted sum of n-step advantage estimates
        for n in range(1, T - t + 1):
            g = 0.0
            discount = 1.0
            terminated = False
            for k in range(n):
                g += discount * rewards[t + k]
                discount *= gamma
                if dones[t + k]:
                    terminated = True
                    break
            if not terminated:
                g += discount * values_ext[t + n]
            a_n = g - values[t]
            if n == T - t or terminated:
                # closed tail: remaining lambda mass on the final estimate
                total += weight * a_n
                norm += weight
                break
            total += (1 - lam) * weight * a_n
            norm += (1 - lam) * weight
            weight *= lam
        adv[t] = total / norm if norm else 0.0
    return adv


def brute_force_gae_recursive(rewards, values, dones, bootstrap, gamma, lam):
    T = len(rewards)
    adv = np.zeros(T)
    next_adv = 0.0
    next_value = bootstrap
    for t in range(T - 1, -1, -1):
        mask = 1.0 - dones[t]
        delta = rewards[t] + gamma * next_value * mask - values[t]
        adv[t] = delta + gamma * lam * mask * next_adv
        next_adv = adv[t]
        next_value = values[t]
    return adv


@pytest.mark.parametrize("lam", [0.0, 0.5, 0.95, 1.0])
def test_gae_matches_brute_force(lam, rng):
    T = 10
    for trial in range(20):
        rewards = rng.normal(size=(T, 1, 1))
        values = rng.normal(size=(T, 1, 1))
        dones = (rng.uniform(size=(T, 1)) < 0.2).astype(float)
        bootstrap = rng.normal(size=(1, 1))
        adv, ret = compute_gae(rewards, values, dones, 0.9, lam, bootstrap)
        want = brute_force_gae_recursive(
            rewards[:, 0, 0], values[:, 0, 0], dones[:, 0], bootstrap[0, 0], 0.9, lam
        )
        assert np.abs(adv[:, 0, 0] - want).max() < 1e-8
        assert np.allclose(ret, adv + values)


def test_gae_lambda_one_is_discounted_return(rng):
    T = 10
    rewards = rng.normal(size=(T, 1, 1))
    values = rng.normal(size=(T, 1, 1))
    dones = np.zeros((T, 1))
    dones[-1, 0] = 1.0
    adv, ret = compute_gae(rewards, values, dones, 0.9, 1.0, np.zeros((1, 1)))
    # with lambda = 1 and a terminal end, returns are plain discounted sums
    expected = 0.0
    expected_list = []
    for t in range(T - 1, -1, -1):
        expected = rewards[t, 0, 0] + 0.9 * expected
        expected_list.append(expected)
    expected_list.reverse()
    assert np.abs(ret[:, 0, 0] - np.array(expected_list)).max() < 1e-8


def test_gae_lambda_zero_is_one_step_td(rng):
    T = 8
    rewards = rng.normal(size=(T, 1, 1))
    values = rng.normal(size=(T, 1, 1))
    dones = np.zeros((T, 1))
    bootstrap = rng.normal(size=(1, 1))
    adv, _ = compute_gae(rewards, values, dones, 0.95, 0.0, bootstrap)
    for t in range(T):
        nxt = values[t + 1, 0, 0] if t + 1 < T else bootstrap[0, 0]
        td = rewards[t, 0, 0] + 0.95 * nxt - values[t, 0, 0]
        assert adv[t, 0, 0] == pytest.approx(td, abs=1e-10)


def test_gae_single_step_base_case():
    rewards = np.array([[[1.0]]])
    values = np.array([[[0.3]]])
    bootstrap = np.array([[0.7]])
    adv, _ = compute_gae(rewards, values, np.zeros((1, 1)), 0.9, 0.95, bootstrap)
    assert adv[0, 0, 0] == pytest.approx(1.0 + 0.9 * 0.7 - 0.3)
    adv2, _ = compute_gae(rewards, values, np.ones((1, 1)), 0.9, 0.95, bootstrap)
    assert adv2[0, 0, 0] == pytest.approx(1.0 - 0.3)


def test_standardize_and_weight(rng):
    adv = rng.normal(size=(64, 2)) * np.array([3.0, 0.5]) + np.array([1.0, -2.0])
    # independent transcription
    w = np.array([0.3, 0.7])
    std0 = (adv[:, 0] - adv[:, 0].mean()) / adv[:, 0].std()
    std1 = (adv[:, 1] - adv[:, 1].mean()) / adv[:, 1].std()
    want = 0.3 * std0 + 0.7 * std1
    got = standardize_and_weight(adv, w)
    assert np.abs(got - want).max() < 1e-9

    # zero-variance head contributes nothing
    adv2 = adv.copy()
    adv2[:, 1] = 5.0
    got2 = standardize_and_weight(adv2, w)
    assert np.abs(got2 - 0.3 * std0).max() < 1e-9

    # single-weight selection
    got3 = standardize_and_weight(adv, np.array([1.0, 0.0]))
    assert np.abs(got3 - std0).max() < 1e-9

    # equal weights give a near-zero batch mean
    got4 = standardize_and_weight(adv, np.array([0.5, 0.5]))
    assert abs(got4.mean()) < 1e-9


def _tiny_batch(rng, policy, critic, T=6, W=4):
    in_dim = policy.net.in_dim
    inputs = rng.normal(size=(T, W, in_dim)).astype(np.float32)
    actions = np.zeros((T, W, policy.act_dim), dtype=np.float32)
    logps = np.zeros((T, W))
    for t in range(T):
        a, lp = policy.sample(inputs[t], rng)
        actions[t] = a
        logps[t] = lp
    rewards = rng.normal(size=(T, W, critic.n_heads))
    values = np.stack([critic.forward(inputs[t])[1] for t in range(T)])
    dones = (rng.uniform(size=(T, W)) < 0.15).astype(float)
    bootstrap = critic.forward(inputs[-1])[1]
    return RolloutBatch(
        inputs=inputs,
        actions=actions,
        log_probs=logps,
        rewards=rewards,
        values=values,
        dones=dones,
        bootstrap_values=bootstrap,
    )


def test_ppo_update_zero_lr_identity(rng):
    policy = GaussianPolicy(8, 3, (12,), rng)
    critic = MultiHeadCritic(8, 2, (12,), rng)
    cfg = PPOConfig(policy_lr=0.0, critic_lr=0.0, batch_size=8, epochs=2)
    learner = PPOLearner(policy, critic, cfg)
    batch = _tiny_batch(rng, policy, critic)
    before = [p.copy() for p in policy.params()]
    diag = learner.update(batch, fixed_objectives(("a", "b"), (0.5, 0.5)), rng)
    assert not diag["aborted"] and np.isfinite(diag["surrogate"])
    for a, b in zip(policy.params(), before):
        assert np.array_equal(a, b)


def test_surrogate_gradient_at_unit_ratio(rng):
    """At rho == 1 the clipped surrogate's gradient equals the vanilla
    policy gradient of advantage-weighted log-probability."""
    policy = GaussianPolicy(6, 2, (10,), rng, dtype=np.float64)
    x = rng.normal(size=(16, 6))
    actions, logp_old = policy.sample(x, rng)
    adv = rng.normal(size=16)

    lp, cache = policy.log_prob(x, actions)
    ratio = np.exp(lp - logp_old)
    assert np.abs(ratio - 1.0).max() < 1e-12
    eps = 0.2
    inside = (ratio > 1 - eps) & (ratio < 1 + eps)
    active = (ratio * adv <= np.clip(ratio, 1 - eps, 1 + eps) * adv) | inside
    dsurr = np.where(active, adv, 0.0)
    coeff = -(dsurr * ratio) / len(x)
    grads = policy.backward(cache, coeff)

    def vanilla_loss():
        lp2, _ = policy.log_prob(x, actions)
        return -float(np.mean(adv * lp2))

    worst = 0.0
    for p, g in zip(policy.params(), grads):
        flat = p.reshape(-1)
        gf = np.asarray(g).reshape(-1)
        for k in range(0, flat.size, max(1, flat.size // 6)):
            old = flat[k]
            flat[k] = old + 1e-5
            up = vanilla_loss()
            flat[k] = old - 1e-5
            down = vanilla_loss()
            flat[k] = old
            fd = (up - down) / 2e-5
            worst = max(worst, abs(fd - gf[k]) / max(1e-6, abs(fd), abs(gf[k])))
    assert worst < 1e-4


def test_ppo_learns_target_matching_toy(rng):
    """1D target task: reward is negative squared distance between action
    and a feature of the input; mean reward must rise over training."""
    policy = GaussianPolicy(3, 1, (16,), rng)
    critic = MultiHeadCritic(3, 1, (16,), rng, beta=0.05)
    cfg = PPOConfig(policy_lr=3e-3, critic_lr=3e-3, batch_size=64, epochs=4)
    learner = PPOLearner(policy, critic, cfg)
    weights = fixed_objectives(("task",), (1.0,))

    def collect(n=256):
        x = rng.normal(size=(n, 3)).astype(np.float32)
        a, lp = policy.sample(x, rng)
        r = -((a[:, 0] - x[:, 0]) ** 2)
        inputs = x[None]
        return (
            RolloutBatch(
                inputs=inputs,
                actions=a[None],
                log_probs=lp[None],
                rewards=r[None, :, None],
                values=critic.forward(x)[1][None],
                dones=np.ones((1, n)),
                bootstrap_values=np.zeros((n, 1)),
            ),
            float(r.mean()),
        )

    rewards = []
    for it in range(50):
        batch, mean_r = collect()
        rewards.append(mean_r)
        learner.update(batch, weights, rng)
    first = np.mean(rewards[:10])
    last = np.mean(rewards[-10:])
    assert last > first + 0.1


def test_dribble_weight_scheduler():
    w = dribble_objectives()
    assert w.values[w.index("nav")] == pytest.approx(0.2)
    assert w.values[w.index("dribble")] == pytest.approx(0.5)

    # perfect window from a saturated success memory drives nav to 0.7
    w_hi = w
    for _ in range(400):
        w_hi = dribble_weight_update(w_hi, 10, 0)
    assert w_hi.p_dribble > 0.999
    assert w_hi.values[w_hi.index("nav")] == pytest.approx(0.7, abs=1e-3)
    assert w_hi.values[w_hi.index("dribble")] == pytest.approx(0.0, abs=1e-3)

    # first update from zero success
    w0 = dribble_weight_update(dribble_objectives(), 0, 10)
    assert w0.values[w0.index("nav")] == pytest.approx(0.2 + 0.5 * np.exp(-10.0), abs=1e-9)

    # no bounces: no update
    w_same = dribble_weight_update(w, 0, 0)
    assert w_same == w

    # monotone non-decreasing nav weight, constant task budget
    rng = np.random.default_rng(0)
    w_run = dribble_objectives()
    prev_nav = w_run.values[w_run.index("nav")]
    for _ in range(200):
        w_run = dribble_weight_update(
            w_run, int(rng.integers(0, 10)), int(rng.integers(0, 10))
        )
        nav = w_run.values[w_run.index("nav")]
        drb = w_run.values[w_run.index("dribble")]
        assert nav >= prev_nav - 1e-12
        assert nav + drb == pytest.approx(0.7, abs=1e-12)
        prev_nav = nav


def test_ppo_config_validation():
    with pytest.raises(ValueError):
        PPOConfig(gamma=0.0)
    with pytest.raises(ValueError):
        PPOConfig(lam=1.5)
    with pytest.raises(ValueError):
        PPOConfig(clip_eps=0.0)
    with pytest.raises(KeyError):
        PPOConfig.from_dict({"nonsense": 1})
    defaults = PPOConfig()
    assert defaults.gamma == 0.95 and defaults.lam == 0.95 and defaults.clip_eps == 0.2
    assert defaults.policy_lr == 5e-6 and defaults.critic_lr == 1e-4
    assert defaults.workers == 512 and defaults.replay_size == 4096
    assert defaults.batch_size == 256 and defaults.epochs == 5
