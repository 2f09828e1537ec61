/**
 * Offline replay of server session logs.
 *
 * The server writes one JSON line per broadcast state, accepted input, and
 * terminal message. Feeding the state and terminal payloads through the same
 * ViewState fold as a live socket reproduces the identical frame sequence,
 * so a replayed log and the live session it records render the same.
 */

import type { DoneMessage, InputMessage, StateMessage } from "./protocol.js";
import { ViewState } from "./view.js";

export interface StateEntry {
  tick: number;
  type: "state";
  payload: StateMessage;
}

export interface InputEntry {
  tick: number;
  type: "input";
  payload: InputMessage & { speed_fraction: number };
}

export interface TerminalEntry {
  tick: number;
  type: "terminal";
  payload: DoneMessage;
}

export type LogEntry = StateEntry | InputEntry | TerminalEntry;

const ENTRY_TYPES = new Set(["state", "input", "terminal"]);

/** Parse a session JSONL log; throws with a line number on malformed input. */
export function parseSessionLog(text: string): LogEntry[] {
  const entries: LogEntry[] = [];
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (line === "") continue;
    let data: unknown;
    try {
      data = JSON.parse(line);
    } catch {
      throw new Error(`line ${i + 1}: not valid JSON`);
    }
    const entry = data as { tick?: unknown; type?: unknown; payload?: unknown };
    if (
      typeof entry.tick !== "number" ||
      typeof entry.type !== "string" ||
      !ENTRY_TYPES.has(entry.type) ||
      typeof entry.payload !== "object" ||
      entry.payload === null
    ) {
      throw new Error(`line ${i + 1}: not a session log entry`);
    }
    entries.push(entry as LogEntry);
  }
  if (entries.length === 0) throw new Error("log is empty");
  return entries;
}

/** A parsed log stepped entry by entry, driving a ViewState. */
export class ReplayPlayer {
  readonly view: ViewState;
  private cursor = 0;

  constructor(readonly entries: LogEntry[], historyLimit?: number) {
    this.view = new ViewState(historyLimit);
  }

  get position(): number {
    return this.cursor;
  }

  get finished(): boolean {
    return this.cursor >= this.entries.length;
  }

  /** Apply the next entry; input entries advance the cursor but not the view. */
  stepOnce(): LogEntry | null {
    if (this.finished) return null;
    const entry = this.entries[this.cursor];
    this.cursor += 1;
    if (entry.type === "state") {
      this.view.apply(entry.payload);
    } else if (entry.type === "terminal") {
      this.view.apply(entry.payload);
    }
    return entry;
  }

  /** Apply every remaining entry. */
  run(): void {
    while (!this.finished) this.stepOnce();
  }

  restart(): void {
    this.cursor = 0;
    this.view.reset();
  }
}
