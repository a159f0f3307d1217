"""Scripted expert reference clips.

Stands in for motion data: each generator emits plausible partial-channel
trajectories (body locomotion with gait, rhythmic dribble-hand cycling,
two-hand lift for shooting) deterministically from a seed.  No ball states
are ever emitted.  Clips use the same feature layout as
``extract_partial_observation``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .observation import BODY, CHANNEL_DIMS, FULL, HANDS

DEFAULT_DRIBBLE_CADENCE_HZ = 1.35
KNOWN_SKILLS = ("dribble", "gather", "locomotion", "stance", "shoot")


def _walker_body(
    rng: np.random.Generator,
    length: int,
    dt: float,
    speed_profile: np.ndarray,
) -> np.ndarray:
    """Forward-walking body features with a simple alternating gait."""
    sway_amp = rng.uniform(0.02, 0.06)
    sway_phase = rng.uniform(0.0, 2.0 * np.pi)
    gait_phase = rng.uniform(0.0, 2.0 * np.pi)

    rel_x = np.array([-0.03, 0.03])
    lateral = np.array([0.15, -0.15])
    lift = np.zeros(2)
    rows = np.zeros((length, CHANNEL_DIMS[BODY]))
    stride = 0.22

    for t in range(length):
        v = float(speed_profile[t])
        vy = sway_amp * np.sin(2.0 * np.pi * 0.7 * t * dt + sway_phase)
        freq = min(2.5, 0.6 + 0.45 * v)
        phi = 2.0 * np.pi * freq * t * dt + gait_phase
        for side in (0, 1):
            cycle = np.sin(phi + side * np.pi)
            swinging = v > 0.15 and cycle > 0.45
            if swinging:
                progress = (cycle - 0.45) / 0.55
                lift[side] = 0.15 * np.sin(np.pi * progress)
                rel_x[side] = min(rel_x[side] + 3.0 * v * dt, 0.5 * stride + 0.2 * v * 0.1)
            else:
                lift[side] = 0.0
                rel_x[side] -= v * dt
                rel_x[side] = max(rel_x[side], -0.5 * stride - 0.25)
        row = [v, vy]
        for side in (0, 1):
            row += [rel_x[side] + 0.1, lateral[side]]
            row += [rel_x[side] - 0.1, lateral[side]]
            row += [lift[side]]
        rows[t] = row
    return rows


def _dribble_hands(
    rng: np.random.Generator, length: int, dt: float, cadence_hz: float
) -> np.ndarray:
    base = rng.uniform(0.98, 1.08)
    amp = rng.uniform(0.08, 0.12)
    phase = rng.uniform(0.0, 2.0 * np.pi)
    rows = np.zeros((length, CHANNEL_DIMS[HANDS]))
    for t in range(length):
        z = base + amp * np.sin(2.0 * np.pi * cadence_hz * t * dt + phase)
        wobble = 0.12 * np.sin(2.0 * np.pi * cadence_hz * t * dt + phase + 0.8)
        pitch = -0.5 * np.pi + wobble
        n_active = [np.cos(pitch), 0.0, np.sin(pitch)]
        rows[t] = [
            0.12, 0.34, 0.92, 0.25, 0.1, -0.96,   # idle left palm, angled down
            0.30, -0.22, z, n_active[0], n_active[1], n_active[2],
        ]
    return rows


def _gather_hands(rng: np.random.Generator, length: int, dt: float) -> np.ndarray:
    """Palms sweep from a dribble-wide spread into an opposed two-hand hold."""
    close_end = int(length * rng.uniform(0.4, 0.6))
    lat0 = rng.uniform(0.3, 0.4)
    z0 = rng.uniform(0.85, 0.95)
    z1 = rng.uniform(1.0, 1.15)
    rows = np.zeros((length, CHANNEL_DIMS[HANDS]))
    for t in range(length):
        u = min(1.0, t / max(1, close_end))
        ease = 3 * u * u - 2 * u * u * u
        lat = lat0 + (0.13 - lat0) * ease
        z = z0 + (z1 - z0) * ease
        pitch = -0.5 * np.pi * (1.0 - ease)   # rotate from facing down to inward
        cp, sp = np.cos(pitch), np.sin(pitch)
        rows[t] = [
            0.3, lat, z, 0.0, -cp, sp,
            0.3, -lat, z, 0.0, cp, sp,
        ]
    return rows


def _shoot_hands(rng: np.random.Generator, length: int, dt: float) -> np.ndarray:
    rise_end = int(length * rng.uniform(0.5, 0.7))
    z0, z1 = 1.0, rng.uniform(1.55, 1.7)
    rows = np.zeros((length, CHANNEL_DIMS[HANDS]))
    for t in range(length):
        u = min(1.0, t / max(1, rise_end))
        z = z0 + (z1 - z0) * (3 * u * u - 2 * u * u * u)
        fwd = 0.32 - 0.06 * u
        pitch = 0.5 * u
        cp, sp = np.cos(pitch), np.sin(pitch)
        rows[t] = [
            fwd, 0.13, z, 0.0, -cp, sp,
            fwd, -0.13, z, 0.0, cp, sp,
        ]
    return rows


def generate_reference(
    skill: str,
    channel: str,
    seed: int,
    length: int,
    control_hz: int = 30,
    cadence_hz: float = DEFAULT_DRIBBLE_CADENCE_HZ,
    speed: float | None = None,
) -> np.ndarray:
    """One scripted clip, shape (length, channel_dim); deterministic in seed."""
    if skill not in KNOWN_SKILLS:
        raise ValueError(f"unknown reference skill: {skill}")
    if length < 2:
        raise ValueError("clips need at least two frames")
    rng = np.random.default_rng(seed)
    dt = 1.0 / control_hz

    if skill in ("dribble", "locomotion"):
        v = speed if speed is not None else float(rng.uniform(0.0, 4.0))
        profile = np.full(length, v)
        if channel == BODY:
            return _walker_body(rng, length, dt, profile)
        if channel == HANDS and skill == "dribble":
            return _dribble_hands(rng, length, dt, cadence_hz)
    if skill == "gather" and channel == BODY:
        v0 = speed if speed is not None else float(rng.uniform(1.0, 3.0))
        profile = v0 * np.exp(-np.arange(length) * dt / 0.25)
        return _walker_body(rng, length, dt, profile)
    if skill == "gather" and channel == HANDS:
        return _gather_hands(rng, length, dt)
    if skill == "stance" and channel == BODY:
        profile = np.zeros(length)
        return _walker_body(rng, length, dt, profile)
    if skill == "shoot":
        rng_body = np.random.default_rng(seed + 1)
        body = _walker_body(rng_body, length, dt, np.zeros(length))
        hands = _shoot_hands(rng, length, dt)
        if channel == FULL:
            return np.concatenate([body, hands], axis=-1)
        if channel == BODY:
            return body
        if channel == HANDS:
            return hands
    raise ValueError(f"no reference generator for skill={skill} channel={channel}")


@dataclass
class ReferenceLibrary:
    """Named clip sets per (skill, channel)."""

    clips: dict = field(default_factory=dict)

    def add(self, skill: str, channel: str, clip: np.ndarray) -> None:
        self.clips.setdefault((skill, channel), []).append(np.asarray(clip))

    def get(self, skill: str, channel: str) -> list[np.ndarray]:
        return self.clips.get((skill, channel), [])

    def save_jsonl(self, path: str | Path) -> None:
        with open(path, "w") as f:
            for (skill, channel), clips in sorted(self.clips.items()):
                for clip in clips:
                    f.write(
                        json.dumps(
                            {"skill": skill, "channel": channel, "clip": clip.tolist()}
                        )
                        + "\n"
                    )

    @classmethod
    def load_jsonl(cls, path: str | Path) -> "ReferenceLibrary":
        lib = cls()
        with open(path) as f:
            for line in f:
                if not line.strip():
                    continue
                row = json.loads(line)
                lib.add(row["skill"], row["channel"], np.array(row["clip"]))
        return lib


def build_reference_library(
    seed: int,
    clips_per_set: int = 8,
    length: int = 120,
    control_hz: int = 30,
    cadence_hz: float = DEFAULT_DRIBBLE_CADENCE_HZ,
) -> ReferenceLibrary:
    """Standard scripted-expert library covering every imitation channel."""
    lib = ReferenceLibrary()
    sets = [
        ("dribble", BODY),
        ("dribble", HANDS),
        ("gather", BODY),
        ("gather", HANDS),
        ("locomotion", BODY),
        ("stance", BODY),
        ("shoot", FULL),
    ]
    for i, (skill, channel) in enumerate(sets):
        for j in range(clips_per_set):
            clip = generate_reference(
                skill,
                channel,
                seed + 1000 * i + j,
                length,
                control_hz=control_hz,
                cadence_hz=cadence_hz,
            )
            lib.add(skill, channel, clip)
    return lib
