/**
 * Top-down court renderer.
 *
 * Draws through a minimal 2D-context interface so tests can substitute a
 * recording stub; rendering is a pure function of the frame (identical
 * frames produce identical draw-call sequences).
 */

import { Frame } from "./protocol.js";

export interface Ctx2D {
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  rect(x: number, y: number, w: number, h: number): void;
  fill(): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
  set fillStyle(v: string);
  set strokeStyle(v: string);
  set lineWidth(v: number);
  set font(v: string);
  set globalAlpha(v: number);
}

export interface RenderConfig {
  width: number;
  height: number;
  metersAcross: number; // court meters mapped to the canvas width
  ringInner: number;
  ringOuter: number;
}

export const DEFAULT_RENDER: RenderConfig = {
  width: 640,
  height: 640,
  metersAcross: 18,
  ringInner: 2.5,
  ringOuter: 7.5,
};

const PHASES = ["dribble", "gather", "shoot"];
const BAR_COLORS = ["#4f8fd6", "#58b368", "#d6604f"];

function px(cfg: RenderConfig, m: number): number {
  return (m * cfg.width) / cfg.metersAcross;
}

function toCanvas(cfg: RenderConfig, x: number, y: number): [number, number] {
  // world origin (the hoop) at canvas center, +y up
  return [cfg.width / 2 + px(cfg, x), cfg.height / 2 - px(cfg, y)];
}

export function renderFrame(ctx: Ctx2D, frame: Frame, cfg: RenderConfig = DEFAULT_RENDER): void {
  ctx.clearRect(0, 0, cfg.width, cfg.height);

  // floor
  ctx.fillStyle = "#20242b";
  ctx.beginPath();
  ctx.rect(0, 0, cfg.width, cfg.height);
  ctx.fill();

  // valid shooting ring
  const [hx, hy] = toCanvas(cfg, frame.hoop[0], frame.hoop[1]);
  ctx.globalAlpha = 0.25;
  ctx.fillStyle = "#3a4a5a";
  ctx.beginPath();
  ctx.arc(hx, hy, px(cfg, cfg.ringOuter), 0, Math.PI * 2);
  ctx.arc(hx, hy, px(cfg, cfg.ringInner), 0, Math.PI * 2);
  ctx.fill();
  ctx.globalAlpha = 1;

  // hoop
  ctx.strokeStyle = "#e8824a";
  ctx.lineWidth = 3;
  ctx.beginPath();
  ctx.arc(hx, hy, px(cfg, 0.23), 0, Math.PI * 2);
  ctx.stroke();

  // feet
  for (const foot of frame.feet) {
    const [fx, fy] = toCanvas(cfg, foot.anchor[0], foot.anchor[1]);
    ctx.fillStyle = foot.planted ? "#9aa7b5" : "#5a6572";
    ctx.beginPath();
    ctx.arc(fx, fy, px(cfg, 0.09), 0, Math.PI * 2);
    ctx.fill();
  }

  // agent body and heading
  const [ax, ay] = toCanvas(cfg, frame.agent.position[0], frame.agent.position[1]);
  ctx.fillStyle = "#4f8fd6";
  ctx.beginPath();
  ctx.arc(ax, ay, px(cfg, frame.agent.body_radius), 0, Math.PI * 2);
  ctx.fill();
  const heading = frame.agent.heading;
  ctx.strokeStyle = "#dce5ee";
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.moveTo(ax, ay);
  ctx.lineTo(ax + px(cfg, 0.35) * Math.cos(heading), ay - px(cfg, 0.35) * Math.sin(heading));
  ctx.stroke();

  // palms
  for (const hand of frame.hands) {
    const [pxx, pyy] = toCanvas(cfg, hand.palm[0], hand.palm[1]);
    ctx.fillStyle = "#dce5ee";
    ctx.beginPath();
    ctx.arc(pxx, pyy, px(cfg, 0.045), 0, Math.PI * 2);
    ctx.fill();
  }

  // ball: marker scaled by height, with a ground shadow
  const [bx, by] = toCanvas(cfg, frame.ball.position[0], frame.ball.position[1]);
  const height = Math.max(0, frame.ball.position[2]);
  ctx.globalAlpha = 0.35;
  ctx.fillStyle = "#000000";
  ctx.beginPath();
  ctx.arc(bx, by, px(cfg, 0.12), 0, Math.PI * 2);
  ctx.fill();
  ctx.globalAlpha = 1;
  const scale = 1 + 0.35 * height;
  ctx.fillStyle = frame.ball.held ? "#ffd27f" : "#e8a13a";
  ctx.beginPath();
  ctx.arc(bx, by, px(cfg, 0.12) * scale, 0, Math.PI * 2);
  ctx.fill();

  // blend-weight bars and the phase badge
  const omega = frame.omega ?? null;
  if (omega) {
    for (let i = 0; i < 3; i++) {
      const w = Math.max(0, Math.min(1.25, omega[i] ?? 0));
      ctx.fillStyle = BAR_COLORS[i];
      ctx.beginPath();
      ctx.rect(12, 12 + i * 18, 90 * w, 12);
      ctx.fill();
      ctx.fillStyle = "#dce5ee";
      ctx.font = "11px monospace";
      ctx.fillText(PHASES[i], 108, 22 + i * 18);
    }
  }
  const command = frame.command ?? null;
  if (command !== null && command >= 0 && command < 3) {
    ctx.fillStyle = BAR_COLORS[command];
    ctx.font = "14px monospace";
    ctx.fillText(`phase: ${PHASES[command]}`, 12, 84);
  }

  // rule-state overlays
  if (frame.rules.traveling) {
    ctx.strokeStyle = "#ff5555";
    ctx.lineWidth = 6;
    ctx.beginPath();
    ctx.rect(3, 3, cfg.width - 6, cfg.height - 6);
    ctx.stroke();
    ctx.fillStyle = "#ff5555";
    ctx.font = "16px monospace";
    ctx.fillText("TRAVELING", cfg.width / 2 - 40, 28);
  }
  const pivotNames: Record<number, string> = { [-1]: "-", 0: "L", 1: "R", 2: "either" };
  ctx.fillStyle = "#9aa7b5";
  ctx.font = "12px monospace";
  ctx.fillText(
    `pivot ${pivotNames[frame.rules.pivot] ?? "?"}  dribbles +${frame.rules.n_plus}/-${frame.rules.n_minus}`,
    12,
    cfg.height - 30
  );
  const stats = frame.stats ?? {};
  ctx.fillText(
    `makes ${stats.makes ?? 0}/${stats.attempts ?? 0}  catches ${stats.catches ?? 0}`,
    12,
    cfg.height - 14
  );
}

/** Recording stub used by golden tests and debugging. */
export class RecordingCtx implements Ctx2D {
  calls: string[] = [];

  private log(name: string, args: unknown[]): void {
    const fmt = args
      .map((a) => (typeof a === "number" ? a.toFixed(3) : String(a)))
      .join(",");
    this.calls.push(`${name}(${fmt})`);
  }

  clearRect(...a: [number, number, number, number]) { this.log("clearRect", a); }
  beginPath() { this.log("beginPath", []); }
  arc(...a: [number, number, number, number, number]) { this.log("arc", a); }
  moveTo(...a: [number, number]) { this.log("moveTo", a); }
  lineTo(...a: [number, number]) { this.log("lineTo", a); }
  rect(...a: [number, number, number, number]) { this.log("rect", a); }
  fill() { this.log("fill", []); }
  stroke() { this.log("stroke", []); }
  fillText(...a: [string, number, number]) { this.log("fillText", a); }
  set fillStyle(v: string) { this.log("fillStyle", [v]); }
  set strokeStyle(v: string) { this.log("strokeStyle", [v]); }
  set lineWidth(v: number) { this.log("lineWidth", [v]); }
  set font(v: string) { this.log("font", [v]); }
  set globalAlpha(v: number) { this.log("globalAlpha", [v]); }
}
