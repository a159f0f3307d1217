"""Partial observations for imitation: body channel vs hands channel.

The body channel sees agent planar kinematics plus foot states; the hands
channel sees palm offsets and normals in the body frame.  Both are strictly
disjoint projections of the world state and never include ball state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..geom import rot2
from ..world.state import WorldState

BODY = "body"
HANDS = "hands"
FULL = "full"

CHANNEL_DIMS = {BODY: 12, HANDS: 12, FULL: 24}


@dataclass(frozen=True)
class PartialObservation:
    channel: str
    features: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.features)


def body_features(state: WorldState) -> np.ndarray:
    import math

    agent = state.agent
    c, s = math.cos(agent.heading), math.sin(agent.heading)
    rx, ry = agent.position[0], agent.position[1]
    out = np.empty(CHANNEL_DIMS[BODY])
    out[0] = c * agent.velocity[0] + s * agent.velocity[1]
    out[1] = -s * agent.velocity[0] + c * agent.velocity[1]
    i = 2
    for foot in state.feet:
        fc, fs = math.cos(foot.yaw), math.sin(foot.yaw)
        hx, hy = fc * 0.1, fs * 0.1
        for vx, vy in (
            (foot.anchor[0] + hx, foot.anchor[1] + hy),
            (foot.anchor[0] - hx, foot.anchor[1] - hy),
        ):
            gx, gy = vx - rx, vy - ry
            out[i] = c * gx + s * gy
            out[i + 1] = -s * gx + c * gy
            i += 2
        out[i] = foot.lift
        i += 1
    return out


def hands_features(state: WorldState) -> np.ndarray:
    import math

    agent = state.agent
    c, s = math.cos(agent.heading), math.sin(agent.heading)
    rx, ry = agent.position[0], agent.position[1]
    out = np.empty(CHANNEL_DIMS[HANDS])
    i = 0
    for hand in state.hands:
        palm = hand.palm_world(agent)
        normal = hand.normal_world(agent)
        gx, gy = palm[0] - rx, palm[1] - ry
        out[i] = c * gx + s * gy
        out[i + 1] = -s * gx + c * gy
        out[i + 2] = palm[2]
        out[i + 3] = c * normal[0] + s * normal[1]
        out[i + 4] = -s * normal[0] + c * normal[1]
        out[i + 5] = normal[2]
        i += 6
    return out


def extract_partial_observation(state: WorldState, channel: str) -> PartialObservation:
    if channel == BODY:
        return PartialObservation(BODY, body_features(state))
    if channel == HANDS:
        return PartialObservation(HANDS, hands_features(state))
    if channel == FULL:
        return PartialObservation(
            FULL, np.concatenate([body_features(state), hands_features(state)])
        )
    raise ValueError(f"unknown observation channel: {channel}")
