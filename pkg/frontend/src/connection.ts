/**
 * Server session: websocket with hello handshake, reconnect backoff, a
 * staleness watchdog, and outgoing rate limiting (joystick updates are
 * coalesced to at most 30 messages per second; at most one discrete
 * command goes out per tick interval).
 */

import {
  ClientCommand,
  PROTOCOL_VERSION,
  ServerMessage,
  encodeCommand,
  parseServerMessage,
} from "./protocol.js";

export type SessionStatus =
  | "connecting"
  | "live"
  | "read-only"
  | "desynced"
  | "closed";

export interface SessionEvents {
  onFrame?: (frame: ServerMessage) => void;
  onStatus?: (status: SessionStatus) => void;
  onError?: (message: string) => void;
}

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onopen: (() => void) | null;
  onclose: (() => void) | null;
  onerror: ((ev: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

const VELOCITY_MIN_INTERVAL_MS = 1000 / 30;
const STALE_AFTER_MS = 1000;

export class Session {
  status: SessionStatus = "connecting";
  private socket: SocketLike | null = null;
  private backoffMs = 250;
  private lastFrameAt = 0;
  private lastVelocitySentAt = 0;
  private pendingVelocity: ClientCommand | null = null;
  private pendingDiscrete: ClientCommand[] = [];
  private lastDiscreteSentAt = 0;
  private stopped = false;
  private timers: ReturnType<typeof setInterval>[] = [];

  constructor(
    private url: string,
    private events: SessionEvents,
    private socketFactory: SocketFactory,
    private now: () => number = () => Date.now()
  ) {}

  start(): void {
    this.connect();
    this.timers.push(
      setInterval(() => this.flush(), VELOCITY_MIN_INTERVAL_MS),
      setInterval(() => this.checkStale(), 250)
    );
  }

  stop(): void {
    this.stopped = true;
    for (const t of this.timers) clearInterval(t);
    this.socket?.close();
    this.setStatus("closed");
  }

  private setStatus(status: SessionStatus): void {
    if (this.status !== status) {
      this.status = status;
      this.events.onStatus?.(status);
    }
  }

  private connect(): void {
    if (this.stopped) return;
    this.setStatus("connecting");
    const socket = this.socketFactory(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.backoffMs = 250;
    };
    socket.onmessage = (ev) => this.handleMessage(String(ev.data));
    socket.onclose = () => this.scheduleReconnect();
    socket.onerror = () => {
      /* close follows */
    };
  }

  private scheduleReconnect(): void {
    if (this.stopped) return;
    this.setStatus("connecting");
    const delay = this.backoffMs;
    this.backoffMs = Math.min(this.backoffMs * 2, 5000);
    setTimeout(() => this.connect(), delay);
  }

  handleMessage(raw: string): void {
    const msg = parseServerMessage(raw);
    if (msg === null) {
      console.warn("dropped malformed server message");
      return;
    }
    if (msg.type === "hello") {
      if (msg.protocol !== PROTOCOL_VERSION) {
        this.events.onError?.(
          `protocol mismatch: server ${msg.protocol}, client ${PROTOCOL_VERSION}`
        );
        this.setStatus("read-only");
      } else {
        this.setStatus("live");
      }
      return;
    }
    if (msg.type === "error") {
      this.events.onError?.(msg.message);
      return;
    }
    this.lastFrameAt = this.now();
    if (this.status === "desynced") this.setStatus("live");
    this.events.onFrame?.(msg);
  }

  private checkStale(): void {
    if (
      this.status === "live" &&
      this.lastFrameAt > 0 &&
      this.now() - this.lastFrameAt > STALE_AFTER_MS
    ) {
      this.setStatus("desynced");
    }
  }

  /** Queue a command; joystick velocity coalesces, discrete commands queue. */
  send(cmd: ClientCommand): void {
    if (this.status === "read-only") return;
    if (cmd.type === "velocity") {
      this.pendingVelocity = cmd;
      this.flush();
    } else {
      this.pendingDiscrete.push(cmd);
      this.flush();
    }
  }

  flush(): void {
    if (!this.socket || (this.status !== "live" && this.status !== "desynced")) {
      return;
    }
    const t = this.now();
    if (this.pendingVelocity && t - this.lastVelocitySentAt >= VELOCITY_MIN_INTERVAL_MS) {
      this.trySend(this.pendingVelocity);
      this.pendingVelocity = null;
      this.lastVelocitySentAt = t;
    }
    if (this.pendingDiscrete.length > 0 && t - this.lastDiscreteSentAt >= VELOCITY_MIN_INTERVAL_MS) {
      const cmd = this.pendingDiscrete.shift()!;
      this.trySend(cmd);
      this.lastDiscreteSentAt = t;
      if (this.pendingDiscrete.length > 1) {
        // keep at most one queued retry; drop the rest with a notice
        const dropped = this.pendingDiscrete.length - 1;
        this.pendingDiscrete = this.pendingDiscrete.slice(0, 1);
        if (dropped > 0) console.warn(`dropped ${dropped} queued command(s)`);
      }
    }
  }

  private trySend(cmd: ClientCommand): void {
    try {
      this.socket!.send(encodeCommand(cmd));
    } catch (err) {
      console.warn("send failed", err);
    }
  }
}
