"""Small planar/3D geometry helpers shared across modules."""

from __future__ import annotations

import math

import numpy as np


def wrap_angle(theta: float) -> float:
    """Wrap an angle to (-pi, pi]."""
    r = math.fmod(theta + math.pi, 2.0 * math.pi)
    if r <= 0.0:
        r += 2.0 * math.pi
    return r - math.pi


def rot2(theta: float) -> np.ndarray:
    """2x2 rotation matrix for a planar angle."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def to_world_xy(local_xy: np.ndarray, heading: float) -> np.ndarray:
    return rot2(heading) @ np.asarray(local_xy, dtype=float)


def to_local_xy(world_xy: np.ndarray, heading: float) -> np.ndarray:
    return rot2(-heading) @ np.asarray(world_xy, dtype=float)


def unit(v: np.ndarray, fallback: np.ndarray | None = None) -> np.ndarray:
    """Normalize, returning ``fallback`` (or zeros) for near-zero vectors."""
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n < 1e-12:
        if fallback is None:
            return np.zeros_like(v)
        return np.asarray(fallback, dtype=float)
    return v / n


def heading_vector(theta: float) -> np.ndarray:
    return np.array([np.cos(theta), np.sin(theta)])


def tangent_basis(normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Two unit vectors spanning the plane orthogonal to ``normal``.

    Deterministic: seeds the first tangent from +z unless the normal is
    nearly vertical, then from +x.
    """
    nx, ny, nz = (float(v) for v in normal)
    norm = math.sqrt(nx * nx + ny * ny + nz * nz)
    if norm < 1e-12:
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    nx, ny, nz = nx / norm, ny / norm, nz / norm
    if abs(nz) > 0.99:
        rx, ry, rz = 1.0, 0.0, 0.0
    else:
        rx, ry, rz = 0.0, 0.0, 1.0
    t1x = ry * nz - rz * ny
    t1y = rz * nx - rx * nz
    t1z = rx * ny - ry * nx
    t1n = math.sqrt(t1x * t1x + t1y * t1y + t1z * t1z)
    t1x, t1y, t1z = t1x / t1n, t1y / t1n, t1z / t1n
    t2x = ny * t1z - nz * t1y
    t2y = nz * t1x - nx * t1z
    t2z = nx * t1y - ny * t1x
    return np.array([t1x, t1y, t1z]), np.array([t2x, t2y, t2z])
