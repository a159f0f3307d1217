"""A guided tour of the micro-world physics.

Drops a ball, bounces it, latches a two-hand hold, and throws, printing the
state evolution so you can see the integrator, restitution, and the hold
latch behave.
"""

import numpy as np

from hoopworld.world import (
    ACTION_DIM,
    ScenarioKind,
    WorldConfig,
    make_state,
    reset_scenario,
    step,
)
from hoopworld.world.state import LEFT, RIGHT, hand_slice

cfg = WorldConfig()
idle = np.zeros(ACTION_DIM)

print("== free fall and bounce ==")
state = make_state(cfg, np.array([20.0, 20.0]), 0.0, np.zeros(2), np.array([0.0, 0.0, 1.5]))
for k in range(24):
    state = step(state, idle, cfg)
    if k % 4 == 0:
        print(f" t={state.tick:3d}  z={state.ball.position[2]:.3f}  vz={state.ball.velocity[2]:+.2f}")
print(f"restitution: rebound speed is {cfg.restitution} x impact speed\n")

print("== held ball rides the palms ==")
state = reset_scenario(ScenarioKind.SHOOT_RING_INIT, 7, cfg)
print(f" held={state.ball.held}  ball at {np.round(state.ball.position, 2)}")
lift = np.zeros(ACTION_DIM)
lift[hand_slice(LEFT).start + 2] = 1.0    # raise both palms
lift[hand_slice(RIGHT).start + 2] = 1.0
for _ in range(10):
    state = step(state, lift, cfg)
print(f" after lifting: ball z={state.ball.position[2]:.2f} (still held={state.ball.held})")

print("\n== pushing above the release threshold throws the ball ==")
throw = np.zeros(ACTION_DIM)
throw[hand_slice(LEFT).start + 5] = 0.9
state = step(state, throw, cfg)
print(f" released={state.shoot.released}  velocity={np.round(state.ball.velocity, 2)}")
print(f" release height recorded: {state.shoot.release_height:.2f} m")
