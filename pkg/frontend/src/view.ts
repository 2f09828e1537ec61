/**
 * Client-side view model.
 *
 * The client never simulates: ViewState is a pure fold over the messages the
 * server sends, so the frame sequence is a function of the message sequence
 * alone. That is what makes log replay reproduce a live session exactly.
 */

import { RingBuffer } from "./ring.js";
import type { AckMessage, DoneMessage, ServerMessage, StateMessage } from "./protocol.js";

/** Default bound on trails and gauge histories; memory stays flat past it. */
export const DEFAULT_HISTORY = 2000;

export type ConnectionStatus =
  | "idle"
  | "connecting"
  | "live"
  | "done"
  | "retrying"
  | "error";

export interface TrailPoint {
  t: number;
  x: number;
  y: number;
}

export interface GaugeSample {
  t: number;
  value: number;
}

export class ViewState {
  latest: StateMessage | null = null;
  done: DoneMessage | null = null;
  lastAck: AckMessage | null = null;
  lastError: string | null = null;
  status: ConnectionStatus = "idle";
  scenarioName: string | null = null;
  stateCount = 0;

  robotTrail: RingBuffer<TrailPoint>;
  humanTrails: RingBuffer<TrailPoint>[] = [];
  zHistory: RingBuffer<GaugeSample>;
  uHistory: RingBuffer<GaugeSample>;

  constructor(readonly historyLimit: number = DEFAULT_HISTORY) {
    this.robotTrail = new RingBuffer(historyLimit);
    this.zHistory = new RingBuffer(historyLimit);
    this.uHistory = new RingBuffer(historyLimit);
  }

  /** Fold one server message into the view. */
  apply(msg: ServerMessage): void {
    switch (msg.type) {
      case "state":
        this.applyState(msg);
        break;
      case "done":
        this.done = msg;
        this.status = "done";
        break;
      case "ack":
        this.lastAck = msg;
        break;
      case "error":
        this.lastError = msg.message;
        break;
    }
  }

  private applyState(msg: StateMessage): void {
    if (this.humanTrails.length !== msg.humans.length) {
      this.humanTrails = msg.humans.map(() => new RingBuffer<TrailPoint>(this.historyLimit));
    }
    this.latest = msg;
    this.stateCount += 1;
    this.robotTrail.push({ t: msg.t, x: msg.robot.x, y: msg.robot.y });
    msg.humans.forEach((h, i) => this.humanTrails[i].push({ t: msg.t, x: h.x, y: h.y }));
    this.zHistory.push({ t: msg.t, value: msg.robot.z });
    this.uHistory.push({ t: msg.t, value: msg.robot.u });
  }

  /** Drop session data (trails, gauges, terminal state) but keep connection status. */
  reset(): void {
    this.latest = null;
    this.done = null;
    this.lastAck = null;
    this.lastError = null;
    this.stateCount = 0;
    this.robotTrail.clear();
    this.humanTrails = [];
    this.zHistory.clear();
    this.uHistory.clear();
  }

  /**
   * Canonical serialization of the gauge histories, one JSON line per sample.
   * Two sessions that saw the same state stream produce byte-equal series.
   */
  gaugeSeries(): { z: string[]; u: string[] } {
    const line = (s: GaugeSample) => JSON.stringify([s.t, s.value]);
    return { z: this.zHistory.toArray().map(line), u: this.uHistory.toArray().map(line) };
  }
}
