import { createHash } from "node:crypto";
import { existsSync, readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { dirname, join } from "node:path";

import { describe, expect, it } from "vitest";

import { fixtureFrames } from "../src/fixtures.js";
import { RecordingCtx, renderFrame } from "../src/render.js";

const here = dirname(fileURLToPath(import.meta.url));

export function renderHashes(): string[] {
  return fixtureFrames().map((frame) => {
    const ctx = new RecordingCtx();
    renderFrame(ctx, frame);
    return createHash("sha256").update(ctx.calls.join("\n")).digest("hex");
  });
}

describe("renderer", () => {
  it("is pure: identical frames produce identical draw calls", () => {
    const frame = fixtureFrames()[2];
    const a = new RecordingCtx();
    const b = new RecordingCtx();
    renderFrame(a, frame);
    renderFrame(b, frame);
    expect(a.calls).toEqual(b.calls);
  });

  it("draws the traveling flash only on flagged ticks", () => {
    const frames = fixtureFrames();
    const quiet = new RecordingCtx();
    renderFrame(quiet, frames[0]);
    const flashed = new RecordingCtx();
    renderFrame(flashed, frames[4]);
    expect(quiet.calls.join()).not.toContain("TRAVELING");
    expect(flashed.calls.join()).toContain("TRAVELING");
  });

  it("shows the phase badge from the reference command", () => {
    const frames = fixtureFrames();
    const dribble = new RecordingCtx();
    renderFrame(dribble, frames[0]);
    expect(dribble.calls.join()).toContain("phase: dribble");
    const gather = new RecordingCtx();
    renderFrame(gather, frames[2]);
    expect(gather.calls.join()).toContain("phase: gather");
  });

  it("renders full weight bars for a one-hot blend", () => {
    const ctx = new RecordingCtx();
    renderFrame(ctx, fixtureFrames()[0]);   // omega = [1, 0, 0]
    const bars = ctx.calls.filter((c) => c.startsWith("rect(12.000"));
    expect(bars.length).toBe(3);
    expect(bars[0]).toContain("90.000");    // dribble bar at full width
  });

  it("matches the stored golden render hashes", () => {
    const goldenPath = join(here, "golden_render.json");
    expect(
      existsSync(goldenPath),
      "golden_render.json missing; node test/make_golden.mjs"
    ).toBe(true);
    const golden = JSON.parse(readFileSync(goldenPath, "utf-8"));
    expect(renderHashes()).toEqual(golden.hashes);
  });
});
