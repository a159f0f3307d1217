"""World state containers: agent body, hands, feet, ball, and rule trackers.

States are plain dataclasses over numpy arrays.  ``step`` never mutates its
input; helpers here provide deep copies and derived world-frame quantities
(palm positions, fingertip sets, foot vertices).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ..geom import heading_vector, rot2, tangent_basis, unit, wrap_angle
from ..rules import DribbleTracker, PivotTracker
from .config import WorldConfig

LEFT, RIGHT = 0, 1
SIDES = ("left", "right")

# Flat action layout (21 scalars, each commanded in [-1, 1] except pushes
# in [0, 1]); the world scales and clamps to physical bounds.
ACTION_DIM = 21
A_ACCEL = slice(0, 2)
A_TURN = 2
A_HAND_LEFT = slice(3, 9)   # offset delta (3), facing delta (2), push (1)
A_HAND_RIGHT = slice(9, 15)
A_FOOT_LEFT = slice(15, 18)  # lift switch (1), step offset (2)
A_FOOT_RIGHT = slice(18, 21)


def hand_slice(side: int) -> slice:
    return A_HAND_LEFT if side == LEFT else A_HAND_RIGHT


def foot_slice(side: int) -> slice:
    return A_FOOT_LEFT if side == LEFT else A_FOOT_RIGHT


@dataclass
class AgentState:
    position: np.ndarray          # (2,) world xy
    heading: float                # (-pi, pi]
    velocity: np.ndarray          # (2,) world frame
    body_radius: float = 0.18

    def copy(self) -> "AgentState":
        return AgentState(
            self.position.copy(), self.heading, self.velocity.copy(), self.body_radius
        )

    @property
    def facing(self) -> np.ndarray:
        return heading_vector(self.heading)


@dataclass
class HandState:
    """Palm effector expressed in the agent frame.

    ``offset`` is (forward, lateral, absolute height); ``yaw``/``pitch``
    parameterize the palm normal in the agent frame.  World quantities are
    derived through the agent heading.
    """

    side: int
    offset: np.ndarray            # (3,) agent frame, height absolute
    yaw: float
    pitch: float

    def copy(self) -> "HandState":
        return HandState(self.side, self.offset.copy(), self.yaw, self.pitch)

    def palm_world(self, agent: AgentState) -> np.ndarray:
        c, s = math.cos(agent.heading), math.sin(agent.heading)
        ox, oy, oz = self.offset
        return np.array(
            [agent.position[0] + c * ox - s * oy, agent.position[1] + s * ox + c * oy, oz]
        )

    def normal_world(self, agent: AgentState) -> np.ndarray:
        cp = math.cos(self.pitch)
        lx, ly = cp * math.cos(self.yaw), cp * math.sin(self.yaw)
        c, s = math.cos(agent.heading), math.sin(agent.heading)
        return np.array([c * lx - s * ly, s * lx + c * ly, math.sin(self.pitch)])

    def fingertips_world(self, agent: AgentState, radius: float = 0.04) -> np.ndarray:
        """Palm center plus four ring points in the palm plane, shape (5, 3)."""
        palm = self.palm_world(agent)
        normal = self.normal_world(agent)
        t1, t2 = tangent_basis(normal)
        out = np.empty((5, 3))
        out[0] = palm
        out[1] = palm + radius * t1
        out[2] = palm + radius * t2
        out[3] = palm - radius * t1
        out[4] = palm - radius * t2
        return out


@dataclass
class FootState:
    side: int
    anchor: np.ndarray            # (2,) world xy of the foot segment center
    yaw: float                    # frozen while planted
    lift: float                   # 0 when planted, lift height when raised

    def copy(self) -> "FootState":
        return FootState(self.side, self.anchor.copy(), self.yaw, self.lift)

    @property
    def planted(self) -> bool:
        return self.lift < 0.01

    def vertices(self, half_length: float = 0.1) -> np.ndarray:
        """Front/back segment endpoints with height, shape (2, 3)."""
        d = heading_vector(self.yaw) * half_length
        front = self.anchor + d
        back = self.anchor - d
        return np.array(
            [[front[0], front[1], self.lift], [back[0], back[1], self.lift]]
        )


@dataclass
class BallState:
    position: np.ndarray          # (3,)
    velocity: np.ndarray          # (3,)
    held: bool = False
    attach_local: np.ndarray = field(default_factory=lambda: np.zeros(3))
    release_cooldown: int = 0     # ticks left before the hold latch may re-engage

    def copy(self) -> "BallState":
        return BallState(
            self.position.copy(),
            self.velocity.copy(),
            self.held,
            self.attach_local.copy(),
            self.release_cooldown,
        )


@dataclass
class ShootTracker:
    lifting: bool = False         # held ball rose this tick
    release_height: float = 0.0
    released: bool = False

    def copy(self) -> "ShootTracker":
        return ShootTracker(self.lifting, self.release_height, self.released)


@dataclass
class WorldState:
    tick: int
    agent: AgentState
    hands: tuple[HandState, HandState]
    feet: tuple[FootState, FootState]
    ball: BallState
    hoop: np.ndarray              # (2,) world xy, rim plane at hoop_height
    dribble: DribbleTracker
    pivot: PivotTracker
    shoot: ShootTracker
    rng_cursor: int = 0
    body_contact: bool = False    # swept ball/body overlap without palm contact

    def copy(self) -> "WorldState":
        return WorldState(
            tick=self.tick,
            agent=self.agent.copy(),
            hands=(self.hands[0].copy(), self.hands[1].copy()),
            feet=(self.feet[0].copy(), self.feet[1].copy()),
            ball=self.ball.copy(),
            hoop=self.hoop.copy(),
            dribble=self.dribble,
            pivot=self.pivot,
            shoot=self.shoot.copy(),
            rng_cursor=self.rng_cursor,
            body_contact=self.body_contact,
        )

    def palm_positions(self) -> np.ndarray:
        return np.stack([h.palm_world(self.agent) for h in self.hands])

    def palm_normals(self) -> np.ndarray:
        return np.stack([h.normal_world(self.agent) for h in self.hands])

    def foot_vertices(self, half_length: float = 0.1) -> np.ndarray:
        return np.stack([f.vertices(half_length) for f in self.feet])


def default_hands(cfg: WorldConfig) -> tuple[HandState, HandState]:
    """Dribble-ready pose: palms forward of the body, facing down."""
    z = cfg.reference_height + 0.1
    left = HandState(LEFT, np.array([0.3, 0.22, z]), yaw=0.0, pitch=-0.5 * np.pi)
    right = HandState(RIGHT, np.array([0.3, -0.22, z]), yaw=0.0, pitch=-0.5 * np.pi)
    return left, right


def default_feet(agent: AgentState, cfg: WorldConfig) -> tuple[FootState, FootState]:
    r = rot2(agent.heading)
    left = FootState(LEFT, agent.position + r @ np.array([0.0, cfg.foot_stance_lateral]), agent.heading, 0.0)
    right = FootState(RIGHT, agent.position + r @ np.array([0.0, -cfg.foot_stance_lateral]), agent.heading, 0.0)
    return left, right


def make_state(
    cfg: WorldConfig,
    agent_position: np.ndarray,
    heading: float,
    hoop: np.ndarray,
    ball_position: np.ndarray,
    ball_velocity: np.ndarray | None = None,
    held: bool = False,
) -> WorldState:
    """Assemble a fresh world state with default hand/foot poses."""
    agent = AgentState(
        np.asarray(agent_position, dtype=float).copy(),
        wrap_angle(heading),
        np.zeros(2),
        cfg.body_radius,
    )
    hands = default_hands(cfg)
    ball = BallState(
        np.asarray(ball_position, dtype=float).copy(),
        np.zeros(3) if ball_velocity is None else np.asarray(ball_velocity, dtype=float).copy(),
        held=held,
    )
    state = WorldState(
        tick=0,
        agent=agent,
        hands=hands,
        feet=default_feet(agent, cfg),
        ball=ball,
        hoop=np.asarray(hoop, dtype=float).copy(),
        dribble=DribbleTracker(delta_v=cfg.free_fall_dv),
        pivot=PivotTracker(),
        shoot=ShootTracker(),
    )
    if held:
        attach_hold(state)
    return state


def attach_hold(state: WorldState) -> None:
    """Latch the ball to the current palm midpoint (hands assumed posed)."""
    palms = state.palm_positions()
    mid = palms.mean(axis=0)
    local_xy = rot2(-state.agent.heading) @ (state.ball.position[:2] - mid[:2])
    state.ball.attach_local = np.array(
        [local_xy[0], local_xy[1], state.ball.position[2] - mid[2]]
    )
    state.ball.held = True
    state.ball.velocity = np.zeros(3)


def hold_pose(state: WorldState, cfg: WorldConfig, forward: float = 0.32, height: float = 1.15) -> None:
    """Pose both palms opposed around the ball and latch it (two-hand hold)."""
    lat = cfg.ball_radius + 0.01
    state.hands[LEFT].offset = np.array([forward, lat, height])
    state.hands[LEFT].yaw = -0.5 * np.pi
    state.hands[LEFT].pitch = 0.0
    state.hands[RIGHT].offset = np.array([forward, -lat, height])
    state.hands[RIGHT].yaw = 0.5 * np.pi
    state.hands[RIGHT].pitch = 0.0
    palms = state.palm_positions()
    state.ball.position = palms.mean(axis=0)
    attach_hold(state)
