"""Scripted dribble-gather-shoot episodes, no learning involved.

Shows the competence ceiling of the hand-written controllers and prints a
tick-by-tick phase trace for one episode plus aggregate stats for twenty.
"""

import numpy as np

from hoopworld.harness.scripted import scripted_chain
from hoopworld.world import ScenarioKind, WorldConfig, detect_field_goal, reset_scenario, step

cfg = WorldConfig()
rng = np.random.default_rng(3)

print("== one episode, annotated ==")
state = reset_scenario(ScenarioKind.DRIBBLE_INIT, 11, cfg)
target_v = np.array([1.5, 0.5])
command_tick = 45
scored = False
for t in range(260):
    action = scripted_chain(state, cfg, target_v, shoot_commanded=t >= command_tick)
    new_state = step(state, action, cfg)
    if detect_field_goal(state, new_state, cfg):
        scored = True
    if t % 20 == 0 or (new_state.ball.held and not state.ball.held):
        phase = "dribble" if t < command_tick else ("hold" if new_state.ball.held else "gather/flight")
        print(
            f" t={t:3d} {phase:13s} ball z={new_state.ball.position[2]:.2f}"
            f" dribbles +{new_state.dribble.n_plus}/-{new_state.dribble.n_minus}"
        )
    state = new_state
    if state.shoot.released and state.ball.position[2] < cfg.ball_radius + 0.01:
        break
print(f" outcome: released={state.shoot.released} scored={scored}\n")

print("== twenty episodes ==")
caught = made = 0
for k in range(20):
    state = reset_scenario(ScenarioKind.DRIBBLE_INIT, 100 + k, cfg)
    speed = rng.uniform(0, 4)
    ang = rng.uniform(-np.pi, np.pi)
    target_v = speed * np.array([np.cos(ang), np.sin(ang)])
    cmd = int(rng.integers(30, 90))
    got = scored = False
    for t in range(320):
        action = scripted_chain(state, cfg, target_v, shoot_commanded=t >= cmd)
        new_state = step(state, action, cfg)
        scored = scored or detect_field_goal(state, new_state, cfg)
        got = got or (t >= cmd and new_state.ball.held)
        state = new_state
        if state.shoot.released and state.ball.position[2] < cfg.ball_radius + 0.01:
            break
    caught += got
    made += scored
print(f" caught {caught}/20, made {made}/20")
