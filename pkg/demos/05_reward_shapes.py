"""Reward-formula landscapes, printed as small ASCII sweeps."""

import numpy as np

from hoopworld import rewards as rw

BALL = np.array([0.0, 0.0, 1.0])
R = 0.12


def sweep(label, xs, values, width=40):
    lo, hi = min(values), max(values)
    print(f"\n{label}  (min {lo:.3f}, max {hi:.3f})")
    for x, v in zip(xs, values):
        bar = "#" * int(width * (v - lo) / (hi - lo + 1e-12))
        print(f"  {x:6.2f} | {bar} {v:.3f}")


# single-hand reach: reward vs palm distance from surface contact
dists = np.linspace(0.0, 1.0, 11)
vals = []
for d in dists:
    palms = np.array([[0.0, 0.0, 1.12 + d], [9.0, 9.0, 9.0]])
    normals = np.array([[0.0, 0.0, -1.0], [0.0, 0.0, 1.0]])
    vals.append(rw.hand_reward(palms, normals, BALL, 1, R))
sweep("hand reach reward vs surface-target error [m]", dists, vals)

# vertical-speed adequacy vs ball speed at a low ball height
speeds = np.linspace(0.0, 6.0, 13)
vals = [rw.ball_speed_reward(-s, 0.3, 0.9, 0.875, -9.81) for s in speeds]
sweep("bounce-speed adequacy vs downward speed [m/s]", speeds, vals)

# facing reward vs heading error
errs = np.linspace(0, np.pi, 13)
vals = [
    rw.orient_reward(np.array([1.0, 0.0]), np.array([np.cos(e), np.sin(e)]))
    for e in errs
]
sweep("facing reward vs heading error [rad]", errs, vals)

# shot-arc accuracy vs lateral miss at the rim plane
misses = np.linspace(0.0, 4.0, 9)
vals = []
for m in misses:
    # launch that crosses the rim plane exactly m meters from the hoop
    pos = np.array([0.0, 0.0, 1.4])
    vel = np.array([3.0, 0.0, 7.0])
    point = rw.projectile_hoop_point(pos, vel, np.zeros(2), 3.05, -9.81)
    hoop = point.point_xy + np.array([0.0, m])
    vals.append(
        rw.shoot_reward(
            rw.POST_RELEASE, ball_pos=pos, ball_vel=vel, release_height=1.4,
            hoop_xy=hoop, hoop_height=3.05, g=-9.81,
        )
    )
sweep("shot reward vs rim-plane miss distance [m]", misses, vals)

# gather reward vs the successor's normalized value (clipped shaping)
vbars = np.linspace(-3.0, 3.0, 13)
vals = [rw.gather_reward(1.0, v, 1.0, False) for v in vbars]
sweep("gather reward vs successor value (pose fixed at 1.0)", vbars, vals)
