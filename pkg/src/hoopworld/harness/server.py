"""Interactive demo server.

Runs one simulation loop at control rate (wall-clock) and fans frames out
to websocket clients as JSON text.  Slow clients drop frames rather than
stalling the loop; commands are queued and applied at the next tick.

Protocol (version 1):

    server -> client  {"type": "hello", "protocol": 1}
    server -> client  {"type": "frame", "tick", "agent", "hands", "feet",
                       "ball", "hoop", "rules", "omega", "command",
                       "stats", "shoot"}
    server -> client  {"type": "error", "message"}
    client -> server  {"type": "velocity", "vx", "vy"}
                      {"type": "shoot"}
                      {"type": "pass", "x", "y", "z"}
                      {"type": "stance", "mode"}
                      {"type": "reset", "scenario"}
"""

from __future__ import annotations

import asyncio
import json
import logging

import numpy as np

from ..world import ScenarioKind, WorldConfig, detect_field_goal, reset_scenario, step
from ..world.serialize import to_json_dict

log = logging.getLogger(__name__)

PROTOCOL_VERSION = 1
VALID_STANCES = ("block", "screen", "defend")


class DemoServer:
    def __init__(self, controller, cfg: WorldConfig, seed: int = 0, realtime: bool = True):
        self.controller = controller
        self.cfg = cfg
        self.seed = seed
        self.realtime = realtime
        self.clients: set = set()
        self.commands: asyncio.Queue = asyncio.Queue()
        self.stats = {"attempts": 0, "makes": 0, "catches": 0}
        self.stance = "defend"
        self._episode = 0
        self._reset_world(ScenarioKind.DRIBBLE_INIT)

    def _reset_world(self, kind: ScenarioKind) -> None:
        self._episode += 1
        self.state = reset_scenario(kind, self.seed + self._episode, self.cfg)
        self.prev = self.state
        self.controller.reset(np.zeros(2))
        self._flight_ticks = 0
        self._caught_counted = False

    def _apply_command(self, msg: dict) -> dict | None:
        kind = msg.get("type")
        if kind == "velocity":
            self.controller.set_target_velocity(
                np.array([float(msg["vx"]), float(msg["vy"])])
            )
        elif kind == "shoot":
            self.controller.command_shoot()
        elif kind == "pass":
            target = np.array([float(msg["x"]), float(msg["y"]), float(msg["z"])])
            if hasattr(self.controller, "command_pass"):
                self.controller.command_pass(target)
            else:
                return {"type": "error", "message": "controller has no pass skill; ignored"}
        elif kind == "stance":
            mode = msg.get("mode")
            if mode not in VALID_STANCES:
                return {"type": "error", "message": f"unknown stance: {mode}"}
            self.stance = mode
            if hasattr(self.controller, "set_stance"):
                self.controller.set_stance(mode)
        elif kind == "reset":
            name = msg.get("scenario", "dribble")
            try:
                kind_enum = ScenarioKind(name)
            except ValueError:
                return {"type": "error", "message": f"unknown scenario: {name}"}
            self._reset_world(kind_enum)
        else:
            return {"type": "error", "message": f"unknown command type: {kind}"}
        return None

    def tick(self) -> dict:
        """Advance one control tick and return the frame payload."""
        while not self.commands.empty():
            msg = self.commands.get_nowait()
            err = self._apply_command(msg)
            if err is not None:
                return err

        action, diag = self.controller.act(self.state, self.prev)
        new_state = step(self.state, np.clip(action, -1.0, 1.0), self.cfg)
        made = detect_field_goal(self.state, new_state, self.cfg)
        if made:
            self.stats["makes"] += 1
        if (
            getattr(self.controller, "rs", None) is not None
            and getattr(self.controller.rs, "shoot_requested", False)
            and new_state.ball.held
            and not self._caught_counted
        ):
            self.stats["catches"] += 1
            self._caught_counted = True
        self.prev, self.state = self.state, new_state

        if self.state.shoot.released:
            self._flight_ticks += 1
            grounded = self.state.ball.position[2] < self.cfg.ball_radius + 0.01
            if grounded or self._flight_ticks > 90:
                self.stats["attempts"] += 1
                self._reset_world(ScenarioKind.DRIBBLE_INIT)

        frame = to_json_dict(self.state)
        frame["type"] = "frame"
        frame["omega"] = diag.get("omega")
        frame["command"] = diag.get("command")
        frame["dominant"] = diag.get("dominant")
        frame["v_bar"] = diag.get("v_bar")
        frame["stats"] = dict(self.stats)
        frame["stance"] = self.stance
        return frame

    async def _sim_loop(self) -> None:
        dt = self.cfg.control_dt
        loop = asyncio.get_event_loop()
        next_tick = loop.time()
        while True:
            frame = self.tick()
            payload = json.dumps(frame)
            dead = []
            for queue in self.clients:
                if queue.full():
                    try:
                        queue.get_nowait()  # drop the oldest frame
                    except asyncio.QueueEmpty:
                        pass
                try:
                    queue.put_nowait(payload)
                except asyncio.QueueFull:
                    dead.append(queue)
            for q in dead:
                self.clients.discard(q)
            if self.realtime:
                next_tick += dt
                delay = next_tick - loop.time()
                if delay > 0:
                    await asyncio.sleep(delay)
                else:
                    next_tick = loop.time()
            else:
                await asyncio.sleep(0)

    async def _handle_client(self, websocket) -> None:
        queue: asyncio.Queue = asyncio.Queue(maxsize=4)
        self.clients.add(queue)
        await websocket.send(json.dumps({"type": "hello", "protocol": PROTOCOL_VERSION}))

        async def sender():
            while True:
                payload = await queue.get()
                await websocket.send(payload)

        send_task = asyncio.create_task(sender())
        try:
            async for raw in websocket:
                try:
                    msg = json.loads(raw)
                    if not isinstance(msg, dict):
                        raise ValueError("message must be an object")
                except (json.JSONDecodeError, ValueError) as exc:
                    await websocket.send(
                        json.dumps({"type": "error", "message": f"bad message: {exc}"})
                    )
                    continue
                await self.commands.put(msg)
        finally:
            send_task.cancel()
            self.clients.discard(queue)

    async def serve(self, host: str, port: int, on_ready=None) -> None:
        import websockets

        sim = asyncio.create_task(self._sim_loop())
        async with websockets.serve(self._handle_client, host, port):
            log.info("demo server listening on ws://%s:%d", host, port)
            if on_ready is not None:
                on_ready()
            try:
                await asyncio.Future()
            finally:
                sim.cancel()


def serve_demo(controller, cfg: WorldConfig, host: str, port: int, seed: int = 0, on_ready=None) -> None:
    server = DemoServer(controller, cfg, seed=seed)
    asyncio.run(server.serve(host, port, on_ready=on_ready))
