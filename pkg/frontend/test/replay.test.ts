import { readFileSync } from "node:fs";

import { describe, expect, it } from "vitest";

import { ReplayPlayer, parseSessionLog } from "../src/replay.js";
import { ViewState } from "../src/view.js";

// A real session log written by the server engine: 60 ticks of the head-on
// corridor at 60 Hz with a heading, a target, and a stop input, ending in a
// timeout.
const FIXTURE = readFileSync(new URL("./fixtures/session.jsonl", import.meta.url), "utf8");

describe("parseSessionLog", () => {
  it("parses the server fixture", () => {
    const entries = parseSessionLog(FIXTURE);
    expect(entries).toHaveLength(35);
    expect(entries.filter((e) => e.type === "state")).toHaveLength(31);
    expect(entries.filter((e) => e.type === "input")).toHaveLength(3);
    expect(entries.filter((e) => e.type === "terminal")).toHaveLength(1);
  });

  it("fixture entries are tick-ordered and start at tick zero", () => {
    const entries = parseSessionLog(FIXTURE);
    expect(entries[0]).toMatchObject({ tick: 0, type: "state" });
    for (let i = 1; i < entries.length; i++) {
      expect(entries[i].tick).toBeGreaterThanOrEqual(entries[i - 1].tick);
    }
    const last = entries.at(-1)!;
    expect(last.type).toBe("terminal");
    expect(last.payload).toMatchObject({ type: "done", outcome: "timeout" });
  });

  it("input entries carry the normalized command payloads", () => {
    const inputs = parseSessionLog(FIXTURE).filter((e) => e.type === "input");
    expect(inputs.map((e) => e.payload.mode)).toEqual(["heading", "target", "stop"]);
    for (const entry of inputs) {
      expect(entry.payload.speed_fraction).toBeGreaterThanOrEqual(0);
      expect(entry.payload.speed_fraction).toBeLessThanOrEqual(1);
    }
  });

  it("rejects malformed logs with a line number", () => {
    expect(() => parseSessionLog('{"tick": 0, "type": "state", "payload": {}}\nnot json\n')).toThrow(
      /line 2: not valid JSON/,
    );
    expect(() => parseSessionLog('{"tick": "x", "type": "state", "payload": {}}')).toThrow(
      /line 1: not a session log entry/,
    );
    expect(() => parseSessionLog('{"tick": 0, "type": "frame", "payload": {}}')).toThrow(/line 1/);
    expect(() => parseSessionLog("\n\n")).toThrow(/empty/);
  });

  it("skips blank lines", () => {
    const entries = parseSessionLog("\n" + FIXTURE + "\n\n");
    expect(entries).toHaveLength(35);
  });
});

describe("ReplayPlayer", () => {
  it("replay of a log equals a live fold over the same stream, byte for byte", () => {
    const entries = parseSessionLog(FIXTURE);

    // live: the messages a connected client would have applied, in order
    const live = new ViewState();
    for (const entry of entries) {
      if (entry.type === "state" || entry.type === "terminal") live.apply(entry.payload);
    }

    const player = new ReplayPlayer(entries);
    player.run();

    expect(player.view.gaugeSeries().z.join("\n")).toBe(live.gaugeSeries().z.join("\n"));
    expect(player.view.gaugeSeries().u.join("\n")).toBe(live.gaugeSeries().u.join("\n"));
    expect(player.view.stateCount).toBe(live.stateCount);
    expect(player.view.latest).toEqual(live.latest);
    expect(player.view.done).toEqual(live.done);
  });

  it("steps one entry at a time and finishes done", () => {
    const player = new ReplayPlayer(parseSessionLog(FIXTURE));
    expect(player.finished).toBe(false);
    const first = player.stepOnce();
    expect(first?.type).toBe("state");
    expect(player.view.stateCount).toBe(1);
    player.run();
    expect(player.finished).toBe(true);
    expect(player.stepOnce()).toBeNull();
    expect(player.view.status).toBe("done");
    expect(player.view.done?.outcome).toBe("timeout");
  });

  it("input entries advance the cursor without touching the view", () => {
    const entries = parseSessionLog(FIXTURE);
    const player = new ReplayPlayer(entries);
    const firstInput = entries.findIndex((e) => e.type === "input");
    for (let i = 0; i < firstInput; i++) player.stepOnce();
    const statesBefore = player.view.stateCount;
    expect(player.stepOnce()?.type).toBe("input");
    expect(player.view.stateCount).toBe(statesBefore);
  });

  it("restart rewinds to a clean view", () => {
    const player = new ReplayPlayer(parseSessionLog(FIXTURE));
    player.run();
    player.restart();
    expect(player.position).toBe(0);
    expect(player.view.stateCount).toBe(0);
    expect(player.view.done).toBeNull();
    player.run();
    expect(player.view.done?.outcome).toBe("timeout");
  });

  it("honors a history limit for long logs", () => {
    const player = new ReplayPlayer(parseSessionLog(FIXTURE), 10);
    player.run();
    expect(player.view.zHistory.length).toBe(10);
    expect(player.view.stateCount).toBe(31);
  });
});
