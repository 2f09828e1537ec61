/**
 * Keyboard and pointer mapping to session input messages.
 *
 * Arrow keys hold a heading in one of 8 directions at full speed; releasing
 * them all stops. S/L/R hold the three prompt headings: the pedestrian's
 * straight start-to-goal bearing, or that bearing offset left/right by
 * BEAR_OFFSET. A pointer click walks to the clicked world point; space
 * stops. The coalescer guarantees at most one input message reaches the
 * server per simulation tick, with the latest command winning.
 */

import type { InputMessage, Point } from "./protocol.js";
import type { ViewTransform } from "./transform.js";

/** Prompt heading offset (rad); must equal the simulator's scripted-policy offset. */
export const BEAR_OFFSET = Math.PI / 12;

export type Preset = "S" | "L" | "R";

/** World bearing of the line from `from` to `to`. */
export function bearing(from: Point, to: Point): number {
  return Math.atan2(to.y - from.y, to.x - from.x);
}

/** Held heading for one of the three prompts, given the straight bearing. */
export function presetHeading(base: number, preset: Preset): number {
  switch (preset) {
    case "S":
      return base;
    case "L":
      return base + BEAR_OFFSET;
    case "R":
      return base - BEAR_OFFSET;
  }
}

export interface ArrowState {
  up: boolean;
  down: boolean;
  left: boolean;
  right: boolean;
}

/**
 * Heading for the held arrow combination (world frame, y up), or null when
 * no direction is held or opposing keys cancel out.
 */
export function arrowHeading(arrows: ArrowState): number | null {
  const dx = (arrows.right ? 1 : 0) - (arrows.left ? 1 : 0);
  const dy = (arrows.up ? 1 : 0) - (arrows.down ? 1 : 0);
  if (dx === 0 && dy === 0) return null;
  return Math.atan2(dy, dx);
}

function headingInput(theta: number): InputMessage {
  return { type: "input", mode: "heading", theta, speed_fraction: 1 };
}

const STOP: InputMessage = { type: "input", mode: "stop" };

/**
 * Tracks held keys and turns keyboard/pointer events into input messages.
 * Returns null for events that do not change the command.
 */
export class InputMapper {
  private arrows: ArrowState = { up: false, down: false, left: false, right: false };

  /** `straightBearing` is the external pedestrian's start-to-goal bearing. */
  constructor(public straightBearing: number) {}

  keyDown(key: string): InputMessage | null {
    switch (key) {
      case "ArrowUp":
      case "ArrowDown":
      case "ArrowLeft":
      case "ArrowRight":
        return this.setArrow(key, true);
      case "s":
      case "S":
        return headingInput(presetHeading(this.straightBearing, "S"));
      case "l":
      case "L":
        return headingInput(presetHeading(this.straightBearing, "L"));
      case "r":
      case "R":
        return headingInput(presetHeading(this.straightBearing, "R"));
      case " ":
        return STOP;
      default:
        return null;
    }
  }

  keyUp(key: string): InputMessage | null {
    switch (key) {
      case "ArrowUp":
      case "ArrowDown":
      case "ArrowLeft":
      case "ArrowRight":
        return this.setArrow(key, false);
      default:
        return null;
    }
  }

  /** Map a canvas click to a walk-to-target command in world meters. */
  pointerClick(screen: Point, transform: ViewTransform): InputMessage {
    const world = transform.toWorld(screen);
    return { type: "input", mode: "target", x: world.x, y: world.y, speed_fraction: 1 };
  }

  private setArrow(key: string, pressed: boolean): InputMessage | null {
    const field = { ArrowUp: "up", ArrowDown: "down", ArrowLeft: "left", ArrowRight: "right" }[
      key
    ] as keyof ArrowState;
    if (this.arrows[field] === pressed) return null; // key auto-repeat
    this.arrows[field] = pressed;
    const theta = arrowHeading(this.arrows);
    return theta === null ? STOP : headingInput(theta);
  }
}

/**
 * Rate limiter: at most one input message per simulation tick. Commands
 * offered while the current tick already carried one are queued, and only
 * the newest queued command is sent when the tick advances.
 */
export class InputCoalescer {
  private pending: InputMessage | null = null;
  private sentThisTick = false;

  /** Offer a command now; returns it if it may be sent immediately. */
  offer(msg: InputMessage): InputMessage | null {
    if (this.sentThisTick) {
      this.pending = msg;
      return null;
    }
    this.sentThisTick = true;
    return msg;
  }

  /** The tick advanced; returns the queued command to send, if any. */
  advance(): InputMessage | null {
    this.sentThisTick = false;
    const queued = this.pending;
    this.pending = null;
    if (queued !== null) this.sentThisTick = true;
    return queued;
  }

  reset(): void {
    this.pending = null;
    this.sentThisTick = false;
  }
}
