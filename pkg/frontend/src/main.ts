/** Studio entry point: wire the session, joystick, buttons, and canvas. */

import { Session, SessionStatus } from "./connection.js";
import { VirtualJoystick } from "./joystick.js";
import { Frame, joystickToVelocity } from "./protocol.js";
import { DEFAULT_RENDER, renderFrame, Ctx2D } from "./render.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const params = new URLSearchParams(window.location.search);
const serverUrl = params.get("server") ?? "ws://127.0.0.1:8765";

const canvas = byId<HTMLCanvasElement>("court");
canvas.width = DEFAULT_RENDER.width;
canvas.height = DEFAULT_RENDER.height;
const ctx = canvas.getContext("2d") as unknown as Ctx2D;

const statusEl = byId<HTMLSpanElement>("status");
const noticeEl = byId<HTMLSpanElement>("notice");

let latestFrame: Frame | null = null;
let frameDirty = false;

const session = new Session(
  serverUrl,
  {
    onFrame: (msg) => {
      if (msg.type === "frame") {
        latestFrame = msg;
        frameDirty = true;
      }
    },
    onStatus: (status: SessionStatus) => {
      statusEl.textContent = status;
      statusEl.className = `status status-${status}`;
    },
    onError: (message) => {
      noticeEl.textContent = message;
      setTimeout(() => {
        if (noticeEl.textContent === message) noticeEl.textContent = "";
      }, 4000);
    },
  },
  (url) => new WebSocket(url) as unknown as import("./connection.js").SocketLike
);
session.start();

new VirtualJoystick(byId("joy-base"), byId("joy-knob"), 60, (x, y) => {
  session.send(joystickToVelocity(x, y));
});

byId<HTMLButtonElement>("btn-shoot").addEventListener("click", () =>
  session.send({ type: "shoot" })
);
window.addEventListener("keydown", (e) => {
  if (e.code === "Space") session.send({ type: "shoot" });
});

const stances = ["block", "screen", "defend"] as const;
let stanceIdx = 2;
byId<HTMLButtonElement>("btn-stance").addEventListener("click", () => {
  stanceIdx = (stanceIdx + 1) % stances.length;
  const mode = stances[stanceIdx];
  byId<HTMLButtonElement>("btn-stance").textContent = `stance: ${mode}`;
  session.send({ type: "stance", mode });
});

byId<HTMLButtonElement>("btn-reset").addEventListener("click", () =>
  session.send({ type: "reset", scenario: "dribble" })
);

// click-to-place pass targeting: canvas position -> court meters
canvas.addEventListener("contextmenu", (e) => {
  e.preventDefault();
  const rect = canvas.getBoundingClientRect();
  const mx = ((e.clientX - rect.left) / rect.width) * DEFAULT_RENDER.metersAcross
    - DEFAULT_RENDER.metersAcross / 2;
  const my = (DEFAULT_RENDER.metersAcross / 2)
    - ((e.clientY - rect.top) / rect.height) * DEFAULT_RENDER.metersAcross;
  session.send({ type: "pass", x: mx, y: my, z: 1.0 });
});

function loop(): void {
  if (frameDirty && latestFrame) {
    renderFrame(ctx, latestFrame);
    frameDirty = false;
  }
  requestAnimationFrame(loop);
}
requestAnimationFrame(loop);
