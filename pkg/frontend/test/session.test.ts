/**
 * Scripted end-to-end session against the real simulation server: connect,
 * send a velocity command, send shoot, and watch the reference command
 * advance dribble -> gather -> shoot in the received frames.
 */

import { ChildProcess, spawn } from "node:child_process";
import { describe, expect, it } from "vitest";
import WebSocket from "ws";

import { parseServerMessage } from "../src/protocol.js";

const PYTHON = process.env.HOOPWORLD_PYTHON ?? "python3";

function startServer(port: number): ChildProcess {
  return spawn(
    PYTHON,
    ["-m", "hoopworld.harness.demo_fixture", "--port", String(port)],
    { stdio: ["ignore", "pipe", "pipe"] }
  );
}

function waitForReady(proc: ChildProcess): Promise<void> {
  return new Promise((resolve, reject) => {
    const timer = setTimeout(() => reject(new Error("server start timeout")), 20000);
    proc.stdout!.on("data", (chunk: Buffer) => {
      if (chunk.toString().includes("fixture server on")) {
        clearTimeout(timer);
        resolve();
      }
    });
    proc.on("exit", (code) => reject(new Error(`server exited early (${code})`)));
  });
}

describe("scripted live session", () => {
  it(
    "drives the command machine through all three phases",
    async () => {
      const port = 21000 + Math.floor(Math.random() * 4000);
      const server = startServer(port);
      try {
        await waitForReady(server);
        const ws = new WebSocket(`ws://127.0.0.1:${port}`);
        const commandsSeen: number[] = [];
        let helloProtocol = -1;

        await new Promise<void>((resolve, reject) => {
          const timer = setTimeout(
            () => reject(new Error(`timed out; commands seen: ${commandsSeen}`)),
            60000
          );
          let sentVelocity = false;
          let sentShoot = false;
          ws.on("message", (raw) => {
            const msg = parseServerMessage(raw.toString());
            if (!msg) return;
            if (msg.type === "hello") {
              helloProtocol = msg.protocol;
              ws.send(JSON.stringify({ type: "velocity", vx: 1.5, vy: 0.0 }));
              sentVelocity = true;
              return;
            }
            if (msg.type !== "frame") return;
            const cmd = msg.command;
            if (typeof cmd === "number") {
              if (commandsSeen[commandsSeen.length - 1] !== cmd) {
                commandsSeen.push(cmd);
              }
              if (sentVelocity && !sentShoot && msg.tick > 45) {
                ws.send(JSON.stringify({ type: "shoot" }));
                sentShoot = true;
              }
              if (commandsSeen.join(",").includes("0,1,2")) {
                clearTimeout(timer);
                resolve();
              }
            }
          });
          ws.on("error", (err) => {
            clearTimeout(timer);
            reject(err);
          });
        });

        expect(helloProtocol).toBe(1);
        expect(commandsSeen.join(",")).toContain("0,1,2");
        ws.close();
      } finally {
        server.kill();
      }
    },
    90000
  );
});
