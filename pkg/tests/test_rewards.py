"""Reward formulas against independent high-precision transcriptions."""

import numpy as np
import pytest

import oracles as orc
from hoopworld import rewards as rw

TOL = 1e-9
N_RANDOM = 120


def random_hand_geometry(rng):
    ball = np.array([rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(0.1, 2.0)])
    palms = ball + rng.uniform(-0.6, 0.6, size=(2, 3))
    normals = rng.normal(size=(2, 3))
    normals /= np.linalg.norm(normals, axis=1, keepdims=True)
    tips = np.stack([_ring_points(rng, palms[0]), _ring_points(rng, palms[1])])
    return palms, normals, ball, tips


def _ring_points(rng, palm):
    pts = palm + rng.uniform(-0.08, 0.08, size=(5, 3))
    return pts


def test_nav_reward_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        v = rng.uniform(-6, 6, size=2)
        vt = rng.uniform(-6, 6, size=2)
        got = rw.nav_reward(v, vt)
        want = float(orc.o_nav(v.tolist(), vt.tolist()))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_nav_reward_constants():
    assert rw.nav_reward(np.array([2.0, 0.0]), np.array([2.0, 0.0])) == pytest.approx(1.0)
    assert rw.nav_reward(np.array([1.0, 0.0]), np.zeros(2)) == pytest.approx(
        np.exp(-2.0), abs=1e-12
    )
    assert rw.nav_reward(np.zeros(2), np.array([3.0, 4.0])) == pytest.approx(
        np.exp(-2.0), abs=1e-12
    )


def test_hand_reward_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        palms, normals, ball, _ = random_hand_geometry(rng)
        c = int(rng.uniform() < 0.5)
        got = rw.hand_reward(palms, normals, ball, c, 0.12)
        want = float(orc.o_hand(palms.tolist(), normals.tolist(), ball.tolist(), c, 0.12))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_hand_reward_cases():
    ball = np.array([0.0, 0.0, 1.0])
    palms = np.array([[0.0, 0.0, 1.12], [1.0, 1.0, 1.0]])
    normals = np.array([[0.0, 0.0, -1.0], [0.0, 0.0, 1.0]])
    # palm at surface contact, normal into the ball center
    assert rw.hand_reward(palms, normals, ball, 1, 0.12) == pytest.approx(1.0)
    # surface target point 0.5 m from the ball center -> exp(-1)
    palms2 = np.array([[0.0, 0.0, 1.62], [9.0, 9.0, 9.0]])
    got = rw.hand_reward(palms2, normals, ball, 1, 0.12)
    assert got == pytest.approx(np.exp(-1.0), abs=1e-12)
    # c=0 with palm facing the ball exactly: a picks the full distance
    palms3 = np.array([[0.0, 0.0, 2.0], [9.0, 9.0, 9.0]])
    assert rw.hand_reward(palms3, normals, ball, 0, 0.12) == pytest.approx(1.0)


def test_hand_selection_symmetry(rng):
    for _ in range(60):
        palms, normals, ball, _ = random_hand_geometry(rng)
        a = rw.hand_reward(palms, normals, ball, 1, 0.12)
        b = rw.hand_reward(palms[::-1].copy(), normals[::-1].copy(), ball, 1, 0.12)
        assert a == pytest.approx(b, abs=1e-12)
    # exact tie goes to the left hand
    palms = np.array([[0.3, 0.0, 1.0], [0.3, 0.0, 1.0]])
    normals = np.array([[0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
    ball = np.array([0.3, 0.0, 0.5])
    assert rw.select_hand(palms, ball) == 0


def test_ball_speed_reward_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        vz = rng.uniform(-8, 8)
        h = rng.uniform(0.0, 2.0)
        got = rw.ball_speed_reward(vz, h, 0.9, 0.875, -9.81)
        want = float(orc.o_ball_speed(vz, h, 0.9, 0.875, -9.81))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_ball_speed_reward_cases():
    # rising ball already above the reference height
    assert rw.ball_speed_reward(1.0, 1.0, 0.9, 0.875, -9.81) == 1.0
    # worked value: v_target = sqrt(2*9.81*0.5) = sqrt(9.81)
    vt = np.sqrt(9.81)
    assert rw.ball_speed_reward(vt, 0.4, 0.9, 0.875, -9.81) == pytest.approx(1.0, abs=1e-12)
    # falling ball above h_ref / e^2
    assert rw.ball_speed_reward(-1.0, 1.2, 0.9, 0.875, -9.81) == 1.0
    assert 0.9 / 0.875**2 == pytest.approx(1.17551, abs=1e-4)


def test_fingers_reward_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        _, _, ball, tips = random_hand_geometry(rng)
        got = rw.fingers_reward(tips[0], ball, 0.12)
        want = float(orc.o_fingers(tips[0].tolist(), ball.tolist(), 0.12))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_fingers_reward_cases():
    ball = np.array([0.0, 0.0, 1.0])
    on_sphere = ball + 0.12 * _unit_dirs()
    assert rw.fingers_reward(on_sphere, ball, 0.12) == pytest.approx(1.0)
    off = ball + 0.14 * _unit_dirs()   # each point 0.02 off the surface
    assert rw.fingers_reward(off, ball, 0.12) == pytest.approx(np.exp(-1.0), abs=1e-12)
    one_off = on_sphere.copy()
    one_off[2] = ball + 0.22 * _unit_dirs()[2]  # a single point 0.1 off
    assert rw.fingers_reward(one_off, ball, 0.12) == pytest.approx(np.exp(-1.0), abs=1e-12)


def _unit_dirs():
    return np.array(
        [
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
        ]
    )


def test_hands_hold_rewards_oracle(rng):
    worst_hands = worst_hold = worst_paired = 0.0
    for _ in range(N_RANDOM):
        palms, normals, ball, tips = random_hand_geometry(rng)
        got = rw.hands_reward(palms, normals, ball, 0.12)
        want = float(orc.o_hands(palms.tolist(), normals.tolist(), ball.tolist(), 0.12))
        worst_hands = max(worst_hands, abs(got - want))
        got = rw.hold_reward(tips, ball, 0.12)
        want = float(orc.o_hold([t.tolist() for t in tips], ball.tolist(), 0.12))
        worst_hold = max(worst_hold, abs(got - want))
        got = rw.paired_hands_reward(palms, normals, ball, 0.12)
        want = float(orc.o_paired_hands(palms.tolist(), normals.tolist(), ball.tolist(), 0.12))
        worst_paired = max(worst_paired, abs(got - want))
    assert worst_hands < TOL and worst_hold < TOL and worst_paired < TOL


def test_hands_reward_cases():
    ball = np.array([0.0, 0.0, 1.0])
    palms = np.array([[0.12, 0.0, 1.0], [-0.12, 0.0, 1.0]])
    normals = np.array([[-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    assert rw.hands_reward(palms, normals, ball, 0.12) == pytest.approx(1.0)
    # each palm's surface target 0.2 m off -> exp(-2.5 * 0.4) = exp(-1)
    palms2 = np.array([[0.32, 0.0, 1.0], [-0.32, 0.0, 1.0]])
    assert rw.hands_reward(palms2, normals, ball, 0.12) == pytest.approx(
        np.exp(-1.0), abs=1e-12
    )
    # one perfect, one 0.4 off
    palms3 = np.array([[0.12, 0.0, 1.0], [-0.52, 0.0, 1.0]])
    assert rw.hands_reward(palms3, normals, ball, 0.12) == pytest.approx(
        np.exp(-1.0), abs=1e-12
    )


def test_hold_reward_cases():
    ball = np.array([0.0, 0.0, 1.0])
    tips = np.stack([ball + 0.12 * _unit_dirs(), ball + 0.12 * _unit_dirs()])
    assert rw.hold_reward(tips, ball, 0.12) == pytest.approx(1.0)
    # distribute a 0.05 total surface deviation -> exp(-1)
    tips_off = tips.copy()
    tips_off[0, 0] = ball + 0.17 * _unit_dirs()[0]
    assert rw.hold_reward(tips_off, ball, 0.12) == pytest.approx(np.exp(-1.0), abs=1e-12)
    tips_off2 = tips.copy()
    tips_off2[0, 0] = ball + 0.17 * _unit_dirs()[0]
    tips_off2[1, 1] = ball + 0.07 * _unit_dirs()[1]
    assert rw.hold_reward(tips_off2, ball, 0.12) == pytest.approx(np.exp(-2.0), abs=1e-12)


def test_projectile_hoop_point_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        pos = np.array([rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0.5, 2.5)])
        vel = np.array([rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-2, 10)])
        got = rw.projectile_hoop_point(pos, vel, np.zeros(2), 3.05, -9.81)
        want_point, want_reachable = orc.o_projectile_hoop(
            pos.tolist(), vel.tolist(), [0.0, 0.0], 3.05, -9.81
        )
        assert got.reachable == want_reachable
        worst = max(worst, float(np.max(np.abs(got.point - np.array([float(x) for x in want_point])))))
    assert worst < TOL


def test_projectile_cases():
    # degenerate apex: ball at rim height moving horizontally
    got = rw.projectile_hoop_point(
        np.array([1.0, 2.0, 3.05]), np.array([3.0, 0.0, 0.0]), np.zeros(2), 3.05, -9.81
    )
    assert np.allclose(got.point_xy, [1.0, 2.0])
    # apex below the rim plane
    got = rw.projectile_hoop_point(
        np.array([0.0, 0.0, 1.0]), np.array([1.0, 0.0, 4.0]), np.zeros(2), 3.05, -9.81
    )
    apex_z = 1.0 + 4.0**2 / (2 * 9.81)
    assert not got.reachable and apex_z < 3.05
    assert got.point[2] == pytest.approx(apex_z, abs=1e-12)


def test_shoot_reward_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        palms, normals, ball, tips = random_hand_geometry(rng)
        lifting = bool(rng.uniform() < 0.5)
        got = rw.shoot_reward(
            rw.PRE_RELEASE,
            palms=palms,
            normals=normals,
            fingertips=tips,
            ball_pos=ball,
            lifting=lifting,
            ball_radius=0.12,
        )
        want = float(
            orc.o_shoot_pre(
                palms.tolist(), normals.tolist(), [t.tolist() for t in tips], ball.tolist(), lifting, 0.12
            )
        )
        worst = max(worst, abs(got - want))

        pos = np.array([rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(1.0, 2.2)])
        vel = np.array([rng.uniform(-6, 6), rng.uniform(-6, 6), rng.uniform(0.0, 9.0)])
        h_rel = rng.uniform(1.0, 2.4)
        got = rw.shoot_reward(
            rw.POST_RELEASE,
            ball_pos=pos,
            ball_vel=vel,
            release_height=h_rel,
            hoop_xy=np.zeros(2),
            hoop_height=3.05,
            g=-9.81,
        )
        want = float(orc.o_shoot_post(pos.tolist(), vel.tolist(), h_rel, [0.0, 0.0], 3.05, -9.81))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_shoot_reward_cases(cfg):
    ball = np.array([0.0, 0.0, 1.2])
    palms = np.array([[0.12, 0.0, 1.2], [-0.12, 0.0, 1.2]])
    normals = np.array([[-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    tips = np.stack([ball + 0.12 * _unit_dirs(), ball + 0.12 * _unit_dirs()])
    pre = rw.shoot_reward(
        rw.PRE_RELEASE, palms=palms, normals=normals, fingertips=tips,
        ball_pos=ball, lifting=True, ball_radius=0.12,
    )
    assert pre == pytest.approx(1.5)
    pre_no_lift = rw.shoot_reward(
        rw.PRE_RELEASE, palms=palms, normals=normals, fingertips=tips,
        ball_pos=ball, lifting=False, ball_radius=0.12,
    )
    assert pre_no_lift == pytest.approx(0.5)
    #释 release ratio worked constant: 2.44 / 3.05 = 0.8 plus perfect arc
    vel = np.array([2.0, 0.0, 6.0])
    pos = np.array([0.0, 0.0, 2.44])
    pt = rw.projectile_hoop_point(pos, vel, pos[:2] + np.array([99.0, 0]), 3.05, -9.81)
    post = rw.shoot_reward(
        rw.POST_RELEASE, ball_pos=pos, ball_vel=vel, release_height=2.44,
        hoop_xy=pt.point_xy, hoop_height=3.05, g=-9.81,
    )
    assert post == pytest.approx(0.8 + 1.0, abs=1e-9)
    assert 2.44 / 3.05 == pytest.approx(0.8)


def test_pass_reward_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        pos = np.array([rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(0.5, 2.0)])
        vel = np.array([rng.uniform(-7, 7), rng.uniform(-7, 7), rng.uniform(-3, 8)])
        target = np.array([rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(0.5, 1.5)])
        got = rw.pass_reward(rw.POST_RELEASE, ball_pos=pos, ball_vel=vel, target=target, g=-9.81)
        want = float(orc.o_pass_post(pos.tolist(), vel.tolist(), target.tolist(), -9.81))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_pass_reward_cases():
    # trajectory exactly through the target
    pos = np.array([0.0, 0.0, 1.0])
    vel = np.array([3.0, 0.0, 4.0])
    t = 0.5
    target = pos + vel * t + 0.5 * np.array([0, 0, -9.81]) * t * t
    assert rw.pass_reward(rw.POST_RELEASE, ball_pos=pos, ball_vel=vel, target=target, g=-9.81) == pytest.approx(1.0, abs=1e-12)
    # nearest crossing 2 m off -> exp(-0.5)
    target2 = target + np.array([0.0, 2.0, 0.0])
    assert rw.pass_reward(rw.POST_RELEASE, ball_pos=pos, ball_vel=vel, target=target2, g=-9.81) == pytest.approx(np.exp(-0.5), abs=1e-9)
    with pytest.raises(ValueError):
        rw.pass_reward(rw.POST_RELEASE, ball_pos=pos, ball_vel=vel, target=np.array([0, 0, -1.0]), g=-9.81)


def test_catch_reward_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        palms, normals, ball, tips = random_hand_geometry(rng)
        trav = bool(rng.uniform() < 0.3)
        got = rw.catch_reward(palms, normals, tips, ball, 0.12, trav)
        want = float(
            orc.o_catch(palms.tolist(), normals.tolist(), [t.tolist() for t in tips], ball.tolist(), 0.12, trav)
        )
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_catch_reward_cases():
    ball = np.array([0.0, 0.0, 1.0])
    palms = np.array([[0.12, 0.0, 1.0], [-0.12, 0.0, 1.0]])
    normals = np.array([[-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
    tips = np.stack([ball + 0.12 * _unit_dirs(), ball + 0.12 * _unit_dirs()])
    assert rw.catch_reward(palms, normals, tips, ball, 0.12, False) == pytest.approx(1.5)
    assert rw.catch_reward(palms, normals, tips, ball, 0.12, True) == pytest.approx(0.5)


def test_orient_reward_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        a = rng.uniform(-np.pi, np.pi)
        b = rng.uniform(-np.pi, np.pi)
        f = np.array([np.cos(a), np.sin(a)])
        t = np.array([np.cos(b), np.sin(b)])
        got = rw.orient_reward(f, t)
        want = float(orc.o_orient(f.tolist(), t.tolist()))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_orient_reward_cases():
    e1 = np.array([1.0, 0.0])
    assert rw.orient_reward(e1, e1) == pytest.approx(1.0)
    assert rw.orient_reward(e1, -e1) == pytest.approx(np.exp(-4.0), abs=1e-12)
    assert rw.orient_reward(e1, np.array([0.0, 1.0])) == pytest.approx(
        np.exp(-0.5), abs=1e-12
    )


def test_gather_rewards_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        palms, normals, ball, tips = random_hand_geometry(rng)
        a = rng.uniform(-np.pi, np.pi)
        b = rng.uniform(-np.pi, np.pi)
        f = np.array([np.cos(a), np.sin(a)])
        td = np.array([np.cos(b), np.sin(b)])
        trav = bool(rng.uniform() < 0.3)
        got = rw.gather_pose_reward(palms, normals, tips, ball, f, td, 0.12, trav)
        want = float(
            orc.o_gather_pose(
                palms.tolist(), normals.tolist(), [t.tolist() for t in tips],
                ball.tolist(), f.tolist(), td.tolist(), 0.12, trav,
            )
        )
        worst = max(worst, abs(got - want))

        pose = rng.uniform(-1, 1.6)
        v_bar = rng.uniform(-4, 4)
        viol = bool(rng.uniform() < 0.2)
        got = rw.gather_reward(pose, v_bar, 1.0, viol)
        want = float(orc.o_gather(pose, v_bar, 1.0, viol))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_gather_reward_cases():
    assert rw.gather_reward(0.8, 2.0, 1.0, False) == pytest.approx(1.05)
    assert rw.gather_reward(0.8, -3.0, 1.0, False) == pytest.approx(0.55)
    assert rw.gather_reward(0.8, 2.0, 1.0, True) == -1.0


def test_gather_reward_clip_monotone():
    values = [rw.gather_reward(0.5, v, 1.0, False) for v in np.linspace(-3, 3, 61)]
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    assert values[0] == values[5]      # constant below -v
    assert values[-1] == values[-6]    # constant above +v


def test_locomotion_reward_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        v = rng.uniform(-5, 5, size=2)
        vt = rng.uniform(-5, 5, size=2)
        style = rng.uniform(0, 1)
        has = bool(rng.uniform() < 0.5)
        got = rw.locomotion_reward(v, vt, style, has)
        want = float(orc.o_locomotion(v.tolist(), vt.tolist(), style, has))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_locomotion_reward_cases():
    v = np.array([2.0, 0.0])
    assert rw.locomotion_reward(v, v, 0.0, True) == pytest.approx(1.0)
    assert rw.locomotion_reward(np.zeros(2), np.zeros(2), 1.0, False) == pytest.approx(2.0)
    assert rw.locomotion_reward(np.array([1.0, 0.0]), np.zeros(2), 0.0, False) == pytest.approx(
        1.0 + 0.2 * np.exp(-1.0), abs=1e-12
    )


def test_stance_style_oracle(rng):
    worst = 0.0
    for _ in range(N_RANDOM):
        tu = rng.uniform(-np.pi / 2, np.pi / 2, size=2)
        tl = rng.uniform(-np.pi / 2, np.pi / 2, size=2)
        palms = rng.uniform(-1, 1, size=(2, 3))
        mode = ("block", "screen", "defend")[int(rng.integers(0, 3))]
        arms = rw.ArmPoseInput(tu, tl, palms)
        got = rw.stance_style_reward(arms, mode)
        want = float(orc.o_stance(tu.tolist(), tl.tolist(), palms[0].tolist(), palms[1].tolist(), mode))
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_stance_style_cases():
    palms_close = np.array([[0.0, 0.1, 1.0], [0.0, -0.1, 1.0]])
    # block boundary: (0.164 + 0.212) / 0.376 = 1
    arms = rw.ArmPoseInput(
        np.array([0.164 * np.pi, -0.5]), np.array([0.16 * np.pi, 0.0]), palms_close
    )
    assert (0.164 + 0.212) / 0.376 == pytest.approx(1.0)
    assert rw.stance_style_reward(arms, "block") == pytest.approx(1.0)
    # screen: palms 0.2 apart, all angles at/below -0.4 pi
    arms2 = rw.ArmPoseInput(
        np.array([-0.45 * np.pi, -0.4 * np.pi]),
        np.array([-0.4 * np.pi, -0.5 * np.pi]),
        palms_close,
    )
    assert rw.stance_style_reward(arms2, "screen") == pytest.approx(1.0)
    # defend zero at straight-up arms
    arms3 = rw.ArmPoseInput(np.array([np.pi / 2, -np.pi / 2]), np.zeros(2), palms_close)
    assert rw.stance_style_reward(arms3, "defend") == pytest.approx(0.0)
    with pytest.raises(ValueError):
        rw.stance_style_reward(arms3, "zumba")


def test_exponential_rewards_in_unit_interval(rng):
    for _ in range(200):
        palms, normals, ball, tips = random_hand_geometry(rng)
        for val in (
            rw.nav_reward(rng.uniform(-6, 6, 2), rng.uniform(-6, 6, 2)),
            rw.hand_reward(palms, normals, ball, int(rng.uniform() < 0.5), 0.12),
            rw.fingers_reward(tips[0], ball, 0.12),
            rw.hands_reward(palms, normals, ball, 0.12),
            rw.hold_reward(tips, ball, 0.12),
            rw.paired_hands_reward(palms, normals, ball, 0.12),
        ):
            assert 0.0 < val <= 1.0


def test_dribble_reward_oracle(rng):
    from hoopworld.rules import DribbleTracker

    worst = 0.0
    for _ in range(N_RANDOM):
        palms, normals, ball, tips = random_hand_geometry(rng)
        can = int(rng.uniform() < 0.5)
        i_drb = int(rng.uniform() < 0.5)
        viol = bool(rng.uniform() < 0.15)
        vz = rng.uniform(-6, 6)
        tracker = DribbleTracker(can_dribble=can, i_dribble=i_drb)
        got = rw.dribble_reward(
            palms, normals, tips, ball, vz, tracker, viol, 0.9, 0.875, -9.81, 0.12
        )
        want = float(
            orc.o_dribble(
                palms.tolist(), normals.tolist(), [t.tolist() for t in tips],
                ball.tolist(), vz, can, i_drb, viol, 0.9, 0.875, -9.81, 0.12,
            )
        )
        worst = max(worst, abs(got - want))
    assert worst < TOL


def test_dribble_reward_cases():
    from hoopworld.rules import DribbleTracker

    ball = np.array([0.0, 0.0, 1.0])
    palms = np.array([[0.0, 0.0, 1.12], [9.0, 9.0, 9.0]])
    normals = np.array([[0.0, 0.0, -1.0], [0.0, 0.0, 1.0]])
    tips = np.stack([ball + 0.12 * _unit_dirs(), ball + 0.12 * _unit_dirs()])
    # r_hand = 1 (surface contact), r_sp = 1 (rising above reference height)
    t0 = DribbleTracker(can_dribble=1, i_dribble=0)
    got = rw.dribble_reward(palms, normals, tips, ball, 1.0, t0, False, 0.9, 0.875, -9.81, 0.12)
    assert got == pytest.approx(1.0)
    t1 = DribbleTracker(can_dribble=1, i_dribble=1)
    got = rw.dribble_reward(palms, normals, tips, ball, 1.0, t1, False, 0.9, 0.875, -9.81, 0.12)
    assert got == pytest.approx(1.5)
    assert rw.dribble_reward(palms, normals, tips, ball, 1.0, t1, True, 0.9, 0.875, -9.81, 0.12) == -1.0
