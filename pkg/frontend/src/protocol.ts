/**
 * Wire protocol shared with the simulation server.
 *
 * Server frames are validated leniently (unknown fields pass through for
 * forward compatibility); outgoing client commands are validated strictly
 * before send.
 */

import { z } from "zod";

export const PROTOCOL_VERSION = 1;

const vec2 = z.tuple([z.number(), z.number()]);
const vec3 = z.tuple([z.number(), z.number(), z.number()]);

export const helloSchema = z
  .object({ type: z.literal("hello"), protocol: z.number() })
  .passthrough();

export const frameSchema = z
  .object({
    type: z.literal("frame"),
    tick: z.number(),
    agent: z
      .object({
        position: vec2,
        heading: z.number(),
        velocity: vec2,
        body_radius: z.number(),
      })
      .passthrough(),
    hands: z.array(
      z
        .object({
          side: z.string(),
          palm: vec3,
          normal: vec3,
        })
        .passthrough()
    ),
    feet: z.array(
      z
        .object({
          side: z.string(),
          anchor: vec2,
          yaw: z.number(),
          lift: z.number(),
          planted: z.boolean(),
        })
        .passthrough()
    ),
    ball: z
      .object({ position: vec3, velocity: vec3, held: z.boolean() })
      .passthrough(),
    hoop: vec2,
    rules: z
      .object({
        pivot: z.number(),
        traveling: z.boolean(),
        n_plus: z.number(),
        n_minus: z.number(),
      })
      .passthrough(),
    omega: z.array(z.number()).nullable().optional(),
    command: z.number().nullable().optional(),
    dominant: z.number().nullable().optional(),
    v_bar: z.number().nullable().optional(),
    stats: z.record(z.number()).optional(),
  })
  .passthrough();

export const errorSchema = z
  .object({ type: z.literal("error"), message: z.string() })
  .passthrough();

export const serverMessageSchema = z.union([helloSchema, frameSchema, errorSchema]);

export type Frame = z.infer<typeof frameSchema>;
export type ServerMessage = z.infer<typeof serverMessageSchema>;

export const velocityCommandSchema = z
  .object({ type: z.literal("velocity"), vx: z.number(), vy: z.number() })
  .strict();
export const shootCommandSchema = z.object({ type: z.literal("shoot") }).strict();
export const passCommandSchema = z
  .object({ type: z.literal("pass"), x: z.number(), y: z.number(), z: z.number() })
  .strict();
export const stanceCommandSchema = z
  .object({ type: z.literal("stance"), mode: z.enum(["block", "screen", "defend"]) })
  .strict();
export const resetCommandSchema = z
  .object({ type: z.literal("reset"), scenario: z.string() })
  .strict();

export const clientCommandSchema = z.union([
  velocityCommandSchema,
  shootCommandSchema,
  passCommandSchema,
  stanceCommandSchema,
  resetCommandSchema,
]);

export type ClientCommand = z.infer<typeof clientCommandSchema>;

export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  const result = serverMessageSchema.safeParse(data);
  return result.success ? result.data : null;
}

export function encodeCommand(cmd: ClientCommand): string {
  // throws on malformed commands: nothing invalid ever reaches the wire
  return JSON.stringify(clientCommandSchema.parse(cmd));
}

/** Joystick deflection (magnitude <= 1) to a velocity command in m/s. */
export const JOYSTICK_MAX_SPEED = 5.0;

export function joystickToVelocity(x: number, y: number): ClientCommand {
  const mag = Math.hypot(x, y);
  const scale = mag > 1 ? 1 / mag : 1;
  return {
    type: "velocity",
    vx: x * scale * JOYSTICK_MAX_SPEED,
    vy: y * scale * JOYSTICK_MAX_SPEED,
  };
}
