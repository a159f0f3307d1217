"""Independent high-precision oracles for reward formulas and rule automata.

These are deliberate re-transcriptions, written in a different style from
the library (scalar mpmath arithmetic, dict-based state machines), used to
cross-check the production implementations.
"""

from __future__ import annotations

import mpmath as mp

mp.mp.dps = 40


def _norm(v):
    return mp.sqrt(mp.fsum([mp.mpf(x) * mp.mpf(x) for x in v]))


def _sub(a, b):
    return [mp.mpf(x) - mp.mpf(y) for x, y in zip(a, b)]


def _dot(a, b):
    return mp.fsum([mp.mpf(x) * mp.mpf(y) for x, y in zip(a, b)])


def o_nav(v, v_target):
    scale = max(mp.mpf(1), _dot(v_target, v_target))
    err = _sub(v, v_target)
    return mp.e ** (-2 / scale * _dot(err, err))


def o_hand(palms, normals, ball, can_dribble, radius):
    d0 = _norm(_sub(palms[0], ball))
    d1 = _norm(_sub(palms[1], ball))
    k = 0 if d0 <= d1 else 1
    palm, normal = palms[k], normals[k]
    if can_dribble:
        target = [mp.mpf(p) + mp.mpf(radius) * mp.mpf(n) for p, n in zip(palm, normal)]
        return mp.e ** (-2 * _norm(_sub(target, ball)))
    a = max(mp.mpf(0), _dot(_sub(ball, palm), normal))
    target = [mp.mpf(p) + a * mp.mpf(n) for p, n in zip(palm, normal)]
    err = _norm(_sub(target, ball))
    return mp.e ** (-5 * err * err)


def o_ball_speed(vz, h_ball, h_ref, e, g):
    vz, h_ball, h_ref, e, g = map(mp.mpf, (vz, h_ball, h_ref, e, g))
    if vz > 0:
        radicand = -2 * g * (h_ref - h_ball)
    else:
        radicand = -2 * g * (h_ref / (e * e) - h_ball)
    if radicand <= 0:
        return mp.mpf(1)
    return min(mp.mpf(1), abs(vz / mp.sqrt(radicand)))


def o_fingers(points, ball, radius):
    total = mp.fsum([abs(_norm(_sub(p, ball)) - mp.mpf(radius)) for p in points])
    return mp.e ** (-10 * total)


def o_dribble(palms, normals, tips, ball, vz, can_dribble, i_dribble, violation, h_ref, e, g, radius):
    if violation:
        return mp.mpf(-1)
    value = mp.mpf("0.6") * o_hand(palms, normals, ball, can_dribble, radius)
    value += mp.mpf("0.4") * o_ball_speed(vz, ball[2], h_ref, e, g)
    if i_dribble:
        d0 = _norm(_sub(palms[0], ball))
        d1 = _norm(_sub(palms[1], ball))
        k = 0 if d0 <= d1 else 1
        value += mp.mpf("0.5") * (mp.mpf("0.2") + mp.mpf("0.8") * o_fingers(tips[k], ball, radius))
    return value


def o_hands(palms, normals, ball, radius):
    total = mp.mpf(0)
    for k in (0, 1):
        target = [mp.mpf(p) + mp.mpf(radius) * mp.mpf(n) for p, n in zip(palms[k], normals[k])]
        total += _norm(_sub(target, ball))
    return mp.e ** (mp.mpf(-5) / 2 * total)


def o_hold(all_tips, ball, radius):
    total = mp.fsum(
        [abs(_norm(_sub(p, ball)) - mp.mpf(radius)) for hand in all_tips for p in hand]
    )
    return mp.e ** (-20 * total)


def o_paired_hands(palms, normals, ball, radius):
    total = mp.mpf(0)
    for k in (0, 1):
        target = [mp.mpf(p) + mp.mpf(radius) * mp.mpf(n) for p, n in zip(palms[k], normals[k])]
        total += _norm(_sub(target, ball))
    e_hands = total / 2
    return mp.mpf("0.3") * mp.e ** (-e_hands) + mp.mpf("0.7") * o_hands(palms, normals, ball, radius)


def o_projectile_hoop(pos, vel, hoop_xy, hoop_height, g):
    pos = [mp.mpf(x) for x in pos]
    vel = [mp.mpf(x) for x in vel]
    g = mp.mpf(g)
    h = mp.mpf(hoop_height)
    vz = vel[2]
    disc = vz * vz - 2 * g * (pos[2] - h)
    if disc >= 0:
        t = (-vz - mp.sqrt(disc)) / g
        if t >= 0:
            point = [pos[0] + vel[0] * t, pos[1] + vel[1] * t, h]
            return point, True
    t_apex = max(mp.mpf(0), -vz / g)
    apex = [
        pos[0] + vel[0] * t_apex,
        pos[1] + vel[1] * t_apex,
        pos[2] + vz * t_apex + g * t_apex * t_apex / 2,
    ]
    return apex, False


def o_shoot_pre(palms, normals, tips, ball, lifting, radius):
    value = mp.mpf("0.5") * o_hands(palms, normals, ball, radius)
    if lifting:
        value += o_hold(tips, ball, radius)
    return value


def o_shoot_post(ball_pos, ball_vel, release_height, hoop_xy, hoop_height, g):
    point, reachable = o_projectile_hoop(ball_pos, ball_vel, hoop_xy, hoop_height, g)
    if reachable:
        dist = _norm(_sub(point[:2], hoop_xy))
    else:
        target = [mp.mpf(hoop_xy[0]), mp.mpf(hoop_xy[1]), mp.mpf(hoop_height)]
        dist = _norm(_sub(point, target))
    return mp.mpf(release_height) / mp.mpf(hoop_height) + mp.e ** (-mp.mpf("0.25") * dist)


def o_pass_post(ball_pos, ball_vel, target, g):
    pos = [mp.mpf(x) for x in ball_pos]
    vel = [mp.mpf(x) for x in ball_vel]
    g = mp.mpf(g)
    tz = mp.mpf(target[2])
    vz = vel[2]
    disc = vz * vz - 2 * g * (pos[2] - tz)
    crossings = []
    if disc >= 0:
        for sign in (-1, 1):
            t = (-vz + sign * mp.sqrt(disc)) / g
            if t >= 0:
                crossings.append([pos[0] + vel[0] * t, pos[1] + vel[1] * t])
    if crossings:
        dist = min(_norm(_sub(c, target[:2])) for c in crossings)
    else:
        t_apex = max(mp.mpf(0), -vz / g)
        apex = [
            pos[0] + vel[0] * t_apex,
            pos[1] + vel[1] * t_apex,
            pos[2] + vz * t_apex + g * t_apex * t_apex / 2,
        ]
        dist = _norm(_sub(apex, target))
    return mp.e ** (-mp.mpf("0.25") * dist)


def o_catch(palms, normals, tips, ball, radius, traveling):
    value = mp.mpf("0.5") * o_paired_hands(palms, normals, ball, radius)
    value += o_hold(tips, ball, radius)
    return value - (1 if traveling else 0)


def o_orient(facing, to_target):
    cos_theta = _dot(facing, to_target)
    cos_theta = max(mp.mpf(-1), min(mp.mpf(1), cos_theta))
    angle = abs(mp.acos(cos_theta))
    return mp.e ** (-4 * (angle / mp.pi) ** 3)


def o_gather_pose(palms, normals, tips, ball, facing, target_dir, radius, traveling):
    value = mp.mpf("0.3") * o_paired_hands(palms, normals, ball, radius)
    value += mp.mpf("0.2") * o_orient(facing, target_dir)
    value += o_hold(tips, ball, radius)
    return value - (1 if traveling else 0)


def o_gather(pose, v_bar, v, violation):
    if violation:
        return mp.mpf(-1)
    clipped = max(-mp.mpf(v), min(mp.mpf(v), mp.mpf(v_bar)))
    return mp.mpf(pose) + mp.mpf("0.25") * clipped


def o_locomotion(v, v_target, style, has_target):
    if has_target:
        return o_nav(v, v_target)
    return 1 + mp.mpf("0.2") * mp.e ** (-_dot(v, v)) + mp.mpf("0.8") * mp.mpf(style)


def _clamp01(x):
    return max(mp.mpf(0), min(mp.mpf(1), x))


def o_stance(theta_u, theta_l, palm_left, palm_right, mode):
    tu = [mp.mpf(x) for x in theta_u]
    tl = [mp.mpf(x) for x in theta_l]
    if mode == "block":
        lower = max(_clamp01(t / (mp.mpf("0.16") * mp.pi)) for t in tl)
        upper = max(
            _clamp01((t + mp.mpf("0.212") * mp.pi) / (mp.mpf("0.376") * mp.pi)) for t in tu
        )
        return mp.mpf("0.25") * lower + mp.mpf("0.75") * upper
    if mode == "screen":
        gap = _norm(_sub(palm_left, palm_right))
        close = _clamp01((mp.mpf("0.5") - gap) / mp.mpf("0.3"))
        down = min(
            _clamp01((mp.mpf("0.4") * mp.pi - t) / (mp.mpf("0.8") * mp.pi))
            for t in tu + tl
        )
        return mp.mpf("0.25") * close + mp.mpf("0.75") * down
    if mode == "defend":
        return min(
            _clamp01((mp.mpf("0.5") * mp.pi - abs(t)) / (mp.mpf("0.334") * mp.pi)) for t in tu
        )
    raise ValueError(mode)


# ---------------------------------------------------------------------------
# rule automata, transcribed line by line from the published pseudocode


def oracle_dribble_step(state: dict, vz_prev: float, vz_cur: float, delta_v: float) -> dict:
    s = dict(state)
    if vz_cur - vz_prev < delta_v - 0.01 and vz_cur < 0:
        s["I"] = 1
        s["c"] = 0
    else:
        s["I"] = 0
    if vz_prev < 0 and vz_cur > 0:
        if s["c"] == 1:
            s["n_minus"] += 1
        else:
            s["n_plus"] += 1
        s["c"] = 1
    return s


def oracle_dribble_init() -> dict:
    return {"c": 1, "I": 0, "n_plus": 0, "n_minus": 0}


def oracle_pivot_init() -> dict:
    return {
        "p": -1,
        "P": {},            # vertex id -> (x, y) at first contact
        "T": [-4, -4],
        "prev_c": [False, False],
    }


def oracle_foot_movement(state: dict, verts, tick: int):
    """verts: [foot][vertex] -> (x, y, z)."""
    moves = {}
    for key, (x0, y0) in state["P"].items():
        f, i = key
        x, y, z = verts[f][i]
        moves[key] = abs(x0 - x) > 0.01 or abs(y0 - y) > 0.01

    out = []
    for f in range(2):
        c = any(v[2] < 0.01 for v in verts[f])
        d = False
        m = False
        if c:
            if not state["prev_c"][f]:
                d = True
            if all(moves.get((f, i), False) for i in range(len(verts[f]))):
                m = True
        out.append({"c": c, "m": m, "d": d})

    P = dict(state["P"])
    T = list(state["T"])
    for f in range(2):
        for i, v in enumerate(verts[f]):
            if (f, i) not in P and v[2] < 0.01:
                P[(f, i)] = (v[0], v[1])
                if T[f] < 0:
                    T[f] = tick
    new_state = {"p": state["p"], "P": P, "T": T, "prev_c": [out[0]["c"], out[1]["c"]]}
    return out, new_state


def oracle_pivot_update(state: dict, held: bool, flags, tick: int):
    traveling = False
    s = {"p": state["p"], "P": dict(state["P"]), "T": list(state["T"]), "prev_c": list(state["prev_c"])}
    if not held:
        s["p"] = -1
        s["P"] = {}
        s["prev_c"] = [False, False]
        s["T"] = [-4, -4]
        return False, s
    left, right = flags
    p = s["p"]
    if p == -1:
        if left["c"] and right["c"]:
            p = 2
        elif left["c"]:
            p = 0
        elif right["c"]:
            p = 1
    elif p == 2:
        if left["d"] or right["d"]:
            traveling = True
        elif left["m"] and right["m"]:
            traveling = True
        elif (not left["c"]) or (right["c"] and left["m"]):
            p = 1
            traveling = right["m"]
        elif (not right["c"]) or (left["c"] and right["m"]):
            p = 0
            traveling = left["m"]
    elif p == 0:
        traveling = left["m"] or left["d"]
    elif p == 1:
        traveling = right["m"] or right["d"]
    if left["c"] and s["T"][0] > tick - 4 and right["c"] and s["T"][1] > tick - 4:
        p = 2
    s["p"] = p
    return traveling, s
