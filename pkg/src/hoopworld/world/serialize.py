"""State snapshot serialization.

Binary layout (version 1, little-endian):

    magic   4 bytes  b"HWST"
    version u16
    tick    i64
    rng_cursor i64
    body_contact u8
    agent   f64 x5   (pos xy, heading, vel xy)
    body_radius f64
    hands   2 x f64 x5   (offset xyz, yaw, pitch)
    feet    2 x f64 x4   (anchor xy, yaw, lift)
    ball    f64 x9 + u8 + i64  (pos, vel, attach; held; release_cooldown)
    hoop    f64 x2
    dribble i64 x4 + f64     (can, i_dribble, n+, n-, delta_v)
    shoot   u8 + f64 + u8    (lifting, release_height, released)
    pivot   i64 pivot
            i64 x2 first-contact ticks
            u8 x2  prev contact
            u8     traveling
            u16 n_contacts, then n x (u8 foot, u8 vertex, f64 x, f64 y)

All floats are written exactly (IEEE 754 doubles), so a round trip is
bit-identical.  The JSON form mirrors the same fields for the demo server.
"""

from __future__ import annotations

import struct

import numpy as np

from ..rules import DribbleTracker, PivotTracker
from .state import AgentState, BallState, FootState, HandState, ShootTracker, WorldState

MAGIC = b"HWST"
VERSION = 1


def to_bytes(state: WorldState) -> bytes:
    out = bytearray()
    out += MAGIC
    out += struct.pack("<H", VERSION)
    out += struct.pack("<qqB", state.tick, state.rng_cursor, int(state.body_contact))
    a = state.agent
    out += struct.pack(
        "<6d", a.position[0], a.position[1], a.heading, a.velocity[0], a.velocity[1], a.body_radius
    )
    for h in state.hands:
        out += struct.pack("<5d", h.offset[0], h.offset[1], h.offset[2], h.yaw, h.pitch)
    for f in state.feet:
        out += struct.pack("<4d", f.anchor[0], f.anchor[1], f.yaw, f.lift)
    b = state.ball
    out += struct.pack(
        "<9dBq",
        *b.position,
        *b.velocity,
        *b.attach_local,
        int(b.held),
        b.release_cooldown,
    )
    out += struct.pack("<2d", state.hoop[0], state.hoop[1])
    d = state.dribble
    out += struct.pack("<4qd", d.can_dribble, d.i_dribble, d.n_plus, d.n_minus, d.delta_v)
    s = state.shoot
    out += struct.pack("<BdB", int(s.lifting), s.release_height, int(s.released))
    p = state.pivot
    out += struct.pack(
        "<q2q2BB",
        p.pivot,
        p.first_contact_tick[0],
        p.first_contact_tick[1],
        int(p.prev_contact[0]),
        int(p.prev_contact[1]),
        int(p.traveling),
    )
    items = sorted(p.contacts.items())
    out += struct.pack("<H", len(items))
    for (foot, vertex), (x, y) in items:
        out += struct.pack("<BB2d", foot, vertex, x, y)
    return bytes(out)


def from_bytes(data: bytes) -> WorldState:
    view = memoryview(data)
    if bytes(view[:4]) != MAGIC:
        raise ValueError("not a world snapshot (bad magic)")
    (version,) = struct.unpack_from("<H", view, 4)
    if version != VERSION:
        raise ValueError(f"unsupported snapshot version {version}")
    off = 6
    tick, rng_cursor, body_contact = struct.unpack_from("<qqB", view, off)
    off += struct.calcsize("<qqB")
    ax, ay, heading, vx, vy, body_radius = struct.unpack_from("<6d", view, off)
    off += 48
    agent = AgentState(np.array([ax, ay]), heading, np.array([vx, vy]), body_radius)
    hands = []
    for side in (0, 1):
        ox, oy, oz, yaw, pitch = struct.unpack_from("<5d", view, off)
        off += 40
        hands.append(HandState(side, np.array([ox, oy, oz]), yaw, pitch))
    feet = []
    for side in (0, 1):
        fx, fy, yaw, lift = struct.unpack_from("<4d", view, off)
        off += 32
        feet.append(FootState(side, np.array([fx, fy]), yaw, lift))
    vals = struct.unpack_from("<9dBq", view, off)
    off += struct.calcsize("<9dBq")
    ball = BallState(
        np.array(vals[0:3]),
        np.array(vals[3:6]),
        bool(vals[9]),
        np.array(vals[6:9]),
        int(vals[10]),
    )
    hx, hy = struct.unpack_from("<2d", view, off)
    off += 16
    can, i_dribble, n_plus, n_minus, delta_v = struct.unpack_from("<4qd", view, off)
    off += struct.calcsize("<4qd")
    dribble = DribbleTracker(can, i_dribble, n_plus, n_minus, delta_v)
    lifting, release_height, released = struct.unpack_from("<BdB", view, off)
    off += struct.calcsize("<BdB")
    shoot = ShootTracker(bool(lifting), release_height, bool(released))
    pv, t0, t1, c0, c1, trav = struct.unpack_from("<q2q2BB", view, off)
    off += struct.calcsize("<q2q2BB")
    (n_contacts,) = struct.unpack_from("<H", view, off)
    off += 2
    contacts = {}
    for _ in range(n_contacts):
        foot, vertex, x, y = struct.unpack_from("<BB2d", view, off)
        off += struct.calcsize("<BB2d")
        contacts[(foot, vertex)] = (x, y)
    pivot = PivotTracker(pv, contacts, (t0, t1), (bool(c0), bool(c1)), bool(trav))
    return WorldState(
        tick=tick,
        agent=agent,
        hands=(hands[0], hands[1]),
        feet=(feet[0], feet[1]),
        ball=ball,
        hoop=np.array([hx, hy]),
        dribble=dribble,
        pivot=pivot,
        shoot=shoot,
        rng_cursor=rng_cursor,
        body_contact=bool(body_contact),
    )


def to_json_dict(state: WorldState) -> dict:
    """JSON-friendly snapshot used by the demo server and trace tools."""
    return {
        "version": VERSION,
        "tick": state.tick,
        "agent": {
            "position": state.agent.position.tolist(),
            "heading": state.agent.heading,
            "velocity": state.agent.velocity.tolist(),
            "body_radius": state.agent.body_radius,
        },
        "hands": [
            {
                "side": "left" if h.side == 0 else "right",
                "offset": h.offset.tolist(),
                "yaw": h.yaw,
                "pitch": h.pitch,
                "palm": h.palm_world(state.agent).tolist(),
                "normal": h.normal_world(state.agent).tolist(),
            }
            for h in state.hands
        ],
        "feet": [
            {
                "side": "left" if f.side == 0 else "right",
                "anchor": f.anchor.tolist(),
                "yaw": f.yaw,
                "lift": f.lift,
                "planted": f.planted,
            }
            for f in state.feet
        ],
        "ball": {
            "position": state.ball.position.tolist(),
            "velocity": state.ball.velocity.tolist(),
            "held": state.ball.held,
        },
        "hoop": state.hoop.tolist(),
        "rules": {
            "can_dribble": state.dribble.can_dribble,
            "i_dribble": state.dribble.i_dribble,
            "n_plus": state.dribble.n_plus,
            "n_minus": state.dribble.n_minus,
            "pivot": state.pivot.pivot,
            "traveling": state.pivot.traveling,
        },
        "shoot": {
            "lifting": state.shoot.lifting,
            "release_height": state.shoot.release_height,
            "released": state.shoot.released,
        },
    }
