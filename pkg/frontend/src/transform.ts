/**
 * World-to-screen mapping: square viewport, meters to pixels, y up.
 *
 * The view is always a square window onto the world, at least
 * MIN_ARENA_SIDE meters across, centered on the scenario's action. Pointer
 * input inverts the same transform, so clicks land at exact world
 * coordinates.
 */

import type { Point, ScenarioDoc } from "./protocol.js";

/** Minimum side of the viewed square (m). */
export const MIN_ARENA_SIDE = 8;

export interface Extent {
  cx: number;
  cy: number;
  /** Half the side of the square view (m). */
  half: number;
}

export class ViewTransform {
  /** Pixels per meter. */
  readonly scale: number;

  constructor(
    readonly widthPx: number,
    readonly heightPx: number,
    readonly extent: Extent,
  ) {
    if (widthPx <= 0 || heightPx <= 0 || extent.half <= 0) {
      throw new RangeError("viewport and extent must be positive");
    }
    this.scale = Math.min(widthPx, heightPx) / (2 * extent.half);
  }

  toScreen(p: Point): Point {
    return {
      x: this.widthPx / 2 + (p.x - this.extent.cx) * this.scale,
      y: this.heightPx / 2 - (p.y - this.extent.cy) * this.scale,
    };
  }

  toWorld(p: Point): Point {
    return {
      x: this.extent.cx + (p.x - this.widthPx / 2) / this.scale,
      y: this.extent.cy - (p.y - this.heightPx / 2) / this.scale,
    };
  }
}

/**
 * Square extent covering every start and goal in the scenario with a margin,
 * never smaller than MIN_ARENA_SIDE on a side.
 */
export function extentForScenario(doc: ScenarioDoc, marginM = 1.5): Extent {
  const xs = [doc.robot.start.x, doc.robot.goal.x];
  const ys = [doc.robot.start.y, doc.robot.goal.y];
  for (const h of doc.humans) {
    xs.push(h.start.x, h.goal.x);
    ys.push(h.start.y, h.goal.y);
  }
  const minX = Math.min(...xs);
  const maxX = Math.max(...xs);
  const minY = Math.min(...ys);
  const maxY = Math.max(...ys);
  const half = Math.max(
    MIN_ARENA_SIDE / 2,
    (maxX - minX) / 2 + marginM,
    (maxY - minY) / 2 + marginM,
  );
  return { cx: (minX + maxX) / 2, cy: (minY + maxY) / 2, half };
}
