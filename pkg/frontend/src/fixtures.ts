/** Deterministic synthetic frame sequence used by golden render tests. */

import { Frame } from "./protocol.js";

export function fixtureFrames(): Frame[] {
  const base = (tick: number): Frame =>
    ({
      type: "frame",
      tick,
      agent: {
        position: [3 + 0.1 * tick, 1 - 0.05 * tick],
        heading: 0.3 * tick,
        velocity: [1, 0],
        body_radius: 0.18,
      },
      hands: [
        { side: "left", palm: [3.2, 1.2, 1.0], normal: [0, 0, -1] },
        { side: "right", palm: [3.2, 0.8, 1.0], normal: [0, 0, -1] },
      ],
      feet: [
        { side: "left", anchor: [3, 1.15], yaw: 0, lift: 0, planted: true },
        { side: "right", anchor: [3, 0.85], yaw: 0, lift: 0.15, planted: false },
      ],
      ball: {
        position: [3.4, 1, 0.3 + 0.2 * tick],
        velocity: [0, 0, -2],
        held: tick === 3,
      },
      hoop: [0, 0],
      rules: {
        pivot: tick >= 3 ? 2 : -1,
        traveling: tick === 4,
        n_plus: tick,
        n_minus: 1,
      },
      omega: tick < 2 ? [1, 0, 0] : [0.1, 0.7, 0.2],
      command: tick < 2 ? 0 : 1,
      dominant: tick < 2 ? 0 : 1,
      v_bar: -1.2,
      stats: { attempts: 1, makes: 0, catches: 1 },
    } as Frame);
  return [0, 1, 2, 3, 4].map(base);
}
