"""World configuration constants."""

from __future__ import annotations

from dataclasses import dataclass, fields


@dataclass(frozen=True)
class WorldConfig:
    """Physical and control constants of the micro-world.

    Control runs at ``control_hz`` with ``physics_substeps`` integrator
    substeps per control tick.  The ball bounces with restitution
    ``restitution`` on its vertical velocity and per-bounce horizontal
    damping ``ball_ground_friction``.
    """

    gravity: float = -9.81
    restitution: float = 0.875
    ball_radius: float = 0.12
    hoop_height: float = 3.05
    hoop_radius: float = 0.23
    rim_restitution: float = 0.5
    reference_height: float = 0.9
    control_hz: int = 30
    physics_substeps: int = 4
    ring_inner: float = 2.5
    ring_outer: float = 7.5
    ball_ground_friction: float = 0.95

    # agent body
    max_speed: float = 6.0
    max_accel: float = 12.0
    max_turn_rate: float = 6.0
    body_radius: float = 0.18
    body_height: float = 1.55
    chest_height: float = 0.9
    court_radius: float = 12.0

    # hand effectors
    hand_forward_range: tuple[float, float] = (-0.2, 0.75)
    hand_lateral_range: tuple[float, float] = (-0.6, 0.6)
    hand_height_range: tuple[float, float] = (0.1, 1.8)
    hand_max_delta: float = 0.06
    hand_max_turn: float = 0.3
    fingertip_radius: float = 0.04

    # ball-hand interaction
    push_accel: float = 240.0
    push_range: float = 0.12
    push_dead_zone: float = 0.2
    palm_guard_range: float = 0.35
    hold_engage_dist: float = 0.05
    hold_normal_dot: float = -0.5
    hold_release_push: float = 0.5
    hold_release_separation: float = 0.1
    release_gain: float = 11.5

    # feet
    foot_half_length: float = 0.1
    foot_lift_height: float = 0.15
    foot_step_max: float = 0.12
    foot_stance_lateral: float = 0.15
    foot_reach: float = 0.8

    def __post_init__(self) -> None:
        if not self.gravity < 0:
            raise ValueError("gravity must be negative")
        if not 0.0 < self.restitution < 1.0:
            raise ValueError("restitution must lie in (0, 1)")
        if not self.ball_radius > 0:
            raise ValueError("ball radius must be positive")
        if not self.ring_inner < self.ring_outer:
            raise ValueError("ring inner radius must be below outer radius")
        if self.control_hz <= 0 or self.physics_substeps <= 0:
            raise ValueError("control rate and substeps must be positive")

    @property
    def control_dt(self) -> float:
        return 1.0 / self.control_hz

    @property
    def physics_dt(self) -> float:
        return 1.0 / (self.control_hz * self.physics_substeps)

    @property
    def free_fall_dv(self) -> float:
        """Vertical velocity change of a free ball over one control tick."""
        return self.gravity / self.control_hz

    @classmethod
    def from_dict(cls, values: dict) -> "WorldConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise KeyError(f"unknown world config keys: {sorted(unknown)}")
        coerced = {}
        for f in fields(cls):
            if f.name not in values:
                continue
            v = values[f.name]
            coerced[f.name] = tuple(v) if isinstance(v, list) else v
        return cls(**coerced)
