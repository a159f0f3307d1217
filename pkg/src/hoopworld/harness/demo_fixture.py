"""Self-contained demo server backed by the scripted controllers.

Lets the studio (and its scripted-session test) run against the real wire
protocol without trained checkpoints: the command machine is the real one,
the value source is a hold indicator, and the primitives are the scripted
dribble/gather/shoot chain.

    python -m hoopworld.harness.demo_fixture --port 8765
"""

from __future__ import annotations

import argparse

import numpy as np

from ..router.state import GATHER, RouterState, one_hot, record_omega, reference_command_update
from ..world import WorldConfig
from .scripted import scripted_chain
from .server import serve_demo


class ScriptedComposedController:
    """Scripted primitives under the real reference-command machine."""

    def __init__(self, cfg: WorldConfig, threshold: float = -1.0):
        self.cfg = cfg
        self.threshold = threshold
        self.rs = RouterState()
        self.target_velocity = np.zeros(2)

    def reset(self, target_velocity=None) -> None:
        self.rs = RouterState()
        if target_velocity is not None:
            self.target_velocity = np.asarray(target_velocity, dtype=float)

    def command_shoot(self) -> None:
        self.rs = reference_command_update(self.rs, True, -np.inf, self.threshold)

    def set_target_velocity(self, v) -> None:
        self.target_velocity = np.asarray(v, dtype=float)

    def value(self, state) -> float:
        return 0.0 if state.ball.held else -2.0

    def act(self, state, prev):
        v_bar = self.value(state)
        self.rs = reference_command_update(
            self.rs, self.rs.shoot_requested, v_bar, self.threshold
        )
        action = scripted_chain(
            state, self.cfg, self.target_velocity, self.rs.command >= GATHER
        )
        self.rs = record_omega(self.rs, one_hot(self.rs.command))
        return action, {
            "command": self.rs.command,
            "omega": list(self.rs.omega),
            "dominant": self.rs.dominant,
            "v_bar": v_bar,
        }


def main(argv=None) -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8765)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    cfg = WorldConfig()

    def ready() -> None:
        print(f"fixture server on ws://{args.host}:{args.port}", flush=True)

    serve_demo(
        ScriptedComposedController(cfg), cfg, args.host, args.port, seed=args.seed, on_ready=ready
    )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
