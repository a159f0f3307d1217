/**
 * Virtual joystick (pointer-driven) with a WASD keyboard fallback.
 * Emits a deflection vector with magnitude <= 1; the caller maps it to a
 * velocity command.
 */

export class VirtualJoystick {
  x = 0;
  y = 0;
  active = false;
  private pointerId: number | null = null;
  private keys = new Set<string>();

  constructor(
    private base: HTMLElement,
    private knob: HTMLElement,
    private radiusPx: number,
    private onChange: (x: number, y: number) => void
  ) {
    base.addEventListener("pointerdown", (e) => this.onDown(e));
    window.addEventListener("pointermove", (e) => this.onMove(e));
    window.addEventListener("pointerup", (e) => this.onUp(e));
    window.addEventListener("keydown", (e) => this.onKey(e.key.toLowerCase(), true));
    window.addEventListener("keyup", (e) => this.onKey(e.key.toLowerCase(), false));
  }

  private center(): [number, number] {
    const r = this.base.getBoundingClientRect();
    return [r.left + r.width / 2, r.top + r.height / 2];
  }

  private onDown(e: PointerEvent): void {
    this.pointerId = e.pointerId;
    this.active = true;
    this.onMove(e);
  }

  private onMove(e: PointerEvent): void {
    if (this.pointerId !== e.pointerId) return;
    const [cx, cy] = this.center();
    let dx = (e.clientX - cx) / this.radiusPx;
    let dy = -(e.clientY - cy) / this.radiusPx;
    const mag = Math.hypot(dx, dy);
    if (mag > 1) {
      dx /= mag;
      dy /= mag;
    }
    this.setDeflection(dx, dy);
  }

  private onUp(e: PointerEvent): void {
    if (this.pointerId !== e.pointerId) return;
    this.pointerId = null;
    this.active = false;
    this.setDeflection(0, 0);
  }

  private onKey(key: string, down: boolean): void {
    if (!["w", "a", "s", "d"].includes(key)) return;
    if (down) this.keys.add(key);
    else this.keys.delete(key);
    const x = (this.keys.has("w") ? 1 : 0) - (this.keys.has("s") ? 1 : 0);
    const y = (this.keys.has("a") ? 1 : 0) - (this.keys.has("d") ? 1 : 0);
    const mag = Math.hypot(x, y) || 1;
    this.setDeflection(x / mag, y / mag);
  }

  private setDeflection(x: number, y: number): void {
    this.x = x;
    this.y = y;
    this.knob.style.transform = `translate(${x * this.radiusPx * 0.6}px, ${
      -y * this.radiusPx * 0.6
    }px)`;
    this.onChange(x, y);
  }
}
