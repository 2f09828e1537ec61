import { describe, expect, it } from "vitest";

import { MIN_ARENA_SIDE, ViewTransform, extentForScenario } from "../src/transform.js";
import { makeDoc } from "./protocol.test.js";

function lcg(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (1664525 * state + 1013904223) % 0x100000000;
    return state / 0x100000000;
  };
}

describe("ViewTransform", () => {
  const tf = new ViewTransform(640, 640, { cx: 0, cy: 3.05, half: 4 });

  it("maps the extent center to the viewport center", () => {
    expect(tf.toScreen({ x: 0, y: 3.05 })).toEqual({ x: 320, y: 320 });
  });

  it("is y-up: larger world y means smaller screen y", () => {
    const low = tf.toScreen({ x: 0, y: 0 });
    const high = tf.toScreen({ x: 0, y: 6 });
    expect(high.y).toBeLessThan(low.y);
    expect(high.x).toBe(low.x);
  });

  it("computes pixels per meter from the smaller viewport side", () => {
    expect(tf.scale).toBe(640 / 8);
    const wide = new ViewTransform(900, 300, { cx: 0, cy: 0, half: 5 });
    expect(wide.scale).toBe(300 / 10);
  });

  it("round-trips screen and world coordinates", () => {
    const rand = lcg(12345);
    for (let i = 0; i < 200; i++) {
      const p = { x: (rand() - 0.5) * 16, y: (rand() - 0.5) * 16 + 3 };
      const back = tf.toWorld(tf.toScreen(p));
      expect(back.x).toBeCloseTo(p.x, 10);
      expect(back.y).toBeCloseTo(p.y, 10);
    }
  });

  it("inverts clicks to exact world points", () => {
    const screen = tf.toScreen({ x: 2, y: 3 });
    const world = tf.toWorld(screen);
    expect(world.x).toBeCloseTo(2, 12);
    expect(world.y).toBeCloseTo(3, 12);
  });

  it("rejects degenerate viewports", () => {
    expect(() => new ViewTransform(0, 100, { cx: 0, cy: 0, half: 1 })).toThrow(RangeError);
    expect(() => new ViewTransform(100, 100, { cx: 0, cy: 0, half: 0 })).toThrow(RangeError);
  });
});

describe("extentForScenario", () => {
  it("never shrinks below the minimum arena", () => {
    const ext = extentForScenario(makeDoc());
    expect(ext.half).toBeGreaterThanOrEqual(MIN_ARENA_SIDE / 2);
  });

  it("covers every start and goal with margin", () => {
    const doc = makeDoc();
    doc.robot.goal = { x: 0, y: 9 };
    doc.humans[0].goal = { x: 0, y: -1 };
    const ext = extentForScenario(doc, 1.5);
    expect(ext.cy).toBeCloseTo(4, 12);
    expect(ext.half).toBeCloseTo(6.5, 12);
    for (const y of [-1, 0, 6.1, 9]) {
      expect(Math.abs(y - ext.cy)).toBeLessThanOrEqual(ext.half);
    }
  });

  it("stays square for wide scenarios", () => {
    const doc = makeDoc();
    doc.robot.goal = { x: 20, y: 0 };
    const ext = extentForScenario(doc, 1);
    expect(ext.half).toBeCloseTo(11, 12);
    expect(ext.cx).toBeCloseTo(10, 12);
  });
});
