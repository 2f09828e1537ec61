import { describe, expect, it } from "vitest";

import {
  externalHumanIndex,
  parseServerMessage,
  uStar,
  type ScenarioDoc,
  type StateMessage,
} from "../src/protocol.js";

export function makeDoc(overrides: Partial<ScenarioDoc> = {}): ScenarioDoc {
  return {
    name: "corridor",
    dt: 1 / 60,
    max_time: 30,
    goal_tolerance: 0.2,
    collision_radius: 0.25,
    robot: {
      start: { x: 0, y: 0, theta: Math.PI / 2 },
      goal: { x: 0, y: 6.1 },
      speed: 0.7,
      params: { d: 0.5, alpha: 0.1 },
    },
    humans: [
      {
        start: { x: 0, y: 6.1, theta: -Math.PI / 2 },
        goal: { x: 0, y: -1 },
        speed: 1.09,
        policy: { kind: "external" },
      },
    ],
    ...overrides,
  };
}

describe("parseServerMessage", () => {
  it("parses a state frame", () => {
    const raw = JSON.stringify({
      type: "state",
      t: 0.5,
      robot: { x: 1, y: 2, theta: 0.1, z: -0.2, u: 3, focal: 0 },
      humans: [{ x: 4, y: 5, theta: 1 }],
      goal: { x: 0, y: 6.1 },
    });
    const msg = parseServerMessage(raw) as StateMessage;
    expect(msg.type).toBe("state");
    expect(msg.robot.z).toBe(-0.2);
    expect(msg.humans).toHaveLength(1);
  });

  it("parses ack, done, and error frames", () => {
    expect(parseServerMessage('{"type": "ack", "tick": 7, "clamped": true}')).toMatchObject({
      type: "ack",
      tick: 7,
    });
    expect(
      parseServerMessage('{"type": "done", "outcome": "reached", "metrics": {}}'),
    ).toMatchObject({ outcome: "reached" });
    expect(parseServerMessage('{"type": "error", "message": "nope"}')).toMatchObject({
      message: "nope",
    });
  });

  it("returns null for garbage and unknown types", () => {
    expect(parseServerMessage("not json")).toBeNull();
    expect(parseServerMessage("42")).toBeNull();
    expect(parseServerMessage("null")).toBeNull();
    expect(parseServerMessage('{"type": "telemetry"}')).toBeNull();
    expect(parseServerMessage('{"no_type": 1}')).toBeNull();
  });
});

describe("scenario document helpers", () => {
  it("computes the critical attention from the served params", () => {
    expect(uStar(makeDoc())).toBeCloseTo(5.0, 12);
  });

  it("finds the externally driven human", () => {
    expect(externalHumanIndex(makeDoc())).toBe(0);
    const doc = makeDoc();
    doc.humans = [
      { ...doc.humans[0], policy: { kind: "scripted" } },
      { ...doc.humans[0], policy: { kind: "external" } },
    ];
    expect(externalHumanIndex(doc)).toBe(1);
    doc.humans = [{ ...doc.humans[0], policy: { kind: "scripted" } }];
    expect(externalHumanIndex(doc)).toBe(-1);
  });
});
