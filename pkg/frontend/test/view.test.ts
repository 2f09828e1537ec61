import { describe, expect, it } from "vitest";

import type { ServerMessage, StateMessage } from "../src/protocol.js";
import { ViewState } from "../src/view.js";

function stateAt(t: number, z = 0, u = 0): StateMessage {
  return {
    type: "state",
    t,
    robot: { x: 0.1 * t, y: 0.7 * t, theta: Math.PI / 2, z, u, focal: 0 },
    humans: [{ x: 0, y: 6.1 - 1.09 * t, theta: -Math.PI / 2 }],
    goal: { x: 0, y: 6.1 },
  };
}

describe("ViewState", () => {
  it("folds state messages into trails and gauges", () => {
    const view = new ViewState();
    view.apply(stateAt(0, -0.001, 0));
    view.apply(stateAt(0.1, 0.02, 1.5));
    expect(view.stateCount).toBe(2);
    expect(view.latest?.t).toBe(0.1);
    expect(view.robotTrail.length).toBe(2);
    expect(view.humanTrails).toHaveLength(1);
    expect(view.humanTrails[0].length).toBe(2);
    expect(view.zHistory.last()).toEqual({ t: 0.1, value: 0.02 });
    expect(view.uHistory.last()).toEqual({ t: 0.1, value: 1.5 });
  });

  it("bounds every history at the configured limit", () => {
    const view = new ViewState(50);
    for (let i = 0; i < 500; i++) view.apply(stateAt(i * 0.1, i, i));
    expect(view.robotTrail.length).toBe(50);
    expect(view.humanTrails[0].length).toBe(50);
    expect(view.zHistory.length).toBe(50);
    expect(view.uHistory.length).toBe(50);
    expect(view.zHistory.at(0).value).toBe(450);
  });

  it("records done, ack, and error messages", () => {
    const view = new ViewState();
    view.apply({ type: "ack", tick: 12, clamped: true });
    expect(view.lastAck?.tick).toBe(12);
    view.apply({ type: "error", message: "bad input" });
    expect(view.lastError).toBe("bad input");
    view.apply({ type: "done", outcome: "reached", metrics: { path_length: 6.2 } });
    expect(view.status).toBe("done");
    expect(view.done?.outcome).toBe("reached");
  });

  it("reset clears session data", () => {
    const view = new ViewState();
    view.apply(stateAt(0));
    view.apply({ type: "done", outcome: "timeout", metrics: {} });
    view.reset();
    expect(view.latest).toBeNull();
    expect(view.done).toBeNull();
    expect(view.stateCount).toBe(0);
    expect(view.robotTrail.length).toBe(0);
    expect(view.humanTrails).toHaveLength(0);
  });

  it("identical message streams give byte-equal gauge series", () => {
    const stream: ServerMessage[] = [];
    for (let i = 0; i < 40; i++) {
      stream.push(stateAt(i / 30, Math.sin(i * 0.37) * 1e-3, Math.exp(i * 0.05)));
    }
    const a = new ViewState();
    const b = new ViewState();
    stream.forEach((m) => a.apply(m));
    stream.forEach((m) => b.apply(m));
    expect(a.gaugeSeries()).toEqual(b.gaugeSeries());
    expect(a.gaugeSeries().z.join("\n")).toBe(b.gaugeSeries().z.join("\n"));
  });
});
