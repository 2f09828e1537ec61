/**
 * Canvas rendering: top-down arena plus the two strip charts.
 *
 * Everything here draws from ViewState only; no physics, no interpolation
 * between server states. Layout helpers (chart scaling, marker placement)
 * are exported separately so they can be tested without a canvas.
 */

import type { Point, ScenarioDoc } from "./protocol.js";
import { externalHumanIndex, uStar } from "./protocol.js";
import type { RingBuffer } from "./ring.js";
import type { GaugeSample, TrailPoint, ViewState } from "./view.js";
import type { ViewTransform } from "./transform.js";

export const COLORS = {
  ground: "#10141c",
  grid: "#1d2430",
  trail: "#3d4a5c",
  marker: "#8494aa",
  robot: "#35c4b5",
  human: "#e8b84a",
  externalHuman: "#e86a4a",
  goal: "#f2f0e9",
  z: "#35c4b5",
  u: "#e8964a",
  ref: "#5a6678",
  text: "#c8d0dc",
};

/** Seconds of simulated time between temporal trail markers. */
export const MARKER_INTERVAL_S = 1.0;

/** Indices of trail samples that start a new marker interval (dots on the trail). */
export function markerIndices(ts: number[], intervalS = MARKER_INTERVAL_S): number[] {
  const out: number[] = [];
  for (let i = 0; i < ts.length; i++) {
    if (i === 0 || Math.floor(ts[i] / intervalS) > Math.floor(ts[i - 1] / intervalS)) {
      out.push(i);
    }
  }
  return out;
}

export interface ChartBounds {
  min: number;
  max: number;
}

/** Opinion chart range: symmetric about zero, growing with the data. */
export function zChartBounds(samples: GaugeSample[]): ChartBounds {
  let maxAbs = 0;
  for (const s of samples) maxAbs = Math.max(maxAbs, Math.abs(s.value));
  const half = Math.max(0.5, maxAbs * 1.1);
  return { min: -half, max: half };
}

/** Attention chart range: from zero, always containing the u* reference. */
export function uChartBounds(samples: GaugeSample[], uStarValue: number | null): ChartBounds {
  let maxVal = 1;
  for (const s of samples) maxVal = Math.max(maxVal, s.value * 1.1);
  if (uStarValue !== null) maxVal = Math.max(maxVal, uStarValue * 1.25);
  return { min: 0, max: maxVal };
}

/** Map a gauge value to a pixel row (top of chart = max). */
export function chartY(value: number, bounds: ChartBounds, heightPx: number): number {
  const frac = (value - bounds.min) / (bounds.max - bounds.min);
  return heightPx * (1 - frac);
}

// ---------------------------------------------------------------------------
// drawing

function drawTrail(
  ctx: CanvasRenderingContext2D,
  trail: RingBuffer<TrailPoint>,
  tf: ViewTransform,
  color: string,
): void {
  if (trail.length < 2) return;
  ctx.strokeStyle = color;
  ctx.lineWidth = 1;
  ctx.beginPath();
  trail.forEach((p, i) => {
    const s = tf.toScreen(p);
    if (i === 0) ctx.moveTo(s.x, s.y);
    else ctx.lineTo(s.x, s.y);
  });
  ctx.stroke();

  const ts: number[] = [];
  trail.forEach((p) => ts.push(p.t));
  ctx.fillStyle = COLORS.marker;
  for (const i of markerIndices(ts)) {
    const s = tf.toScreen(trail.at(i));
    ctx.beginPath();
    ctx.arc(s.x, s.y, 2, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function drawWedge(
  ctx: CanvasRenderingContext2D,
  at: Point,
  theta: number,
  tf: ViewTransform,
  color: string,
): void {
  const s = tf.toScreen(at);
  const r = Math.max(6, 0.22 * tf.scale);
  // screen y grows downward, so the heading angle flips sign
  const a = -theta;
  ctx.fillStyle = color;
  ctx.beginPath();
  ctx.moveTo(s.x + r * Math.cos(a), s.y + r * Math.sin(a));
  ctx.lineTo(s.x + 0.55 * r * Math.cos(a + 2.5), s.y + 0.55 * r * Math.sin(a + 2.5));
  ctx.lineTo(s.x + 0.55 * r * Math.cos(a - 2.5), s.y + 0.55 * r * Math.sin(a - 2.5));
  ctx.closePath();
  ctx.fill();
}

function drawStar(ctx: CanvasRenderingContext2D, at: Point, tf: ViewTransform): void {
  const s = tf.toScreen(at);
  const outer = Math.max(5, 0.18 * tf.scale);
  const inner = outer * 0.45;
  ctx.fillStyle = COLORS.goal;
  ctx.beginPath();
  for (let i = 0; i < 10; i++) {
    const r = i % 2 === 0 ? outer : inner;
    const a = -Math.PI / 2 + (i * Math.PI) / 5;
    const x = s.x + r * Math.cos(a);
    const y = s.y + r * Math.sin(a);
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  }
  ctx.closePath();
  ctx.fill();
}

function drawGrid(ctx: CanvasRenderingContext2D, tf: ViewTransform): void {
  const { cx, cy, half } = tf.extent;
  ctx.strokeStyle = COLORS.grid;
  ctx.lineWidth = 1;
  for (let gx = Math.ceil(cx - half); gx <= Math.floor(cx + half); gx++) {
    const a = tf.toScreen({ x: gx, y: cy - half });
    const b = tf.toScreen({ x: gx, y: cy + half });
    ctx.beginPath();
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.stroke();
  }
  for (let gy = Math.ceil(cy - half); gy <= Math.floor(cy + half); gy++) {
    const a = tf.toScreen({ x: cx - half, y: gy });
    const b = tf.toScreen({ x: cx + half, y: gy });
    ctx.beginPath();
    ctx.moveTo(a.x, a.y);
    ctx.lineTo(b.x, b.y);
    ctx.stroke();
  }
  // scale annotation: one grid square is a meter
  ctx.fillStyle = COLORS.text;
  ctx.font = "11px system-ui, sans-serif";
  ctx.fillText(`grid 1 m (${tf.scale.toFixed(0)} px/m)`, 8, tf.heightPx - 8);
}

export function renderArena(
  ctx: CanvasRenderingContext2D,
  view: ViewState,
  tf: ViewTransform,
  doc: ScenarioDoc | null,
): void {
  ctx.fillStyle = COLORS.ground;
  ctx.fillRect(0, 0, tf.widthPx, tf.heightPx);
  drawGrid(ctx, tf);

  const state = view.latest;
  if (state === null) {
    ctx.fillStyle = COLORS.text;
    ctx.font = "13px system-ui, sans-serif";
    ctx.fillText("waiting for session...", tf.widthPx / 2 - 60, tf.heightPx / 2);
    return;
  }

  drawTrail(ctx, view.robotTrail, tf, COLORS.trail);
  for (const trail of view.humanTrails) drawTrail(ctx, trail, tf, COLORS.trail);

  drawStar(ctx, state.goal, tf);

  const extIndex = doc === null ? -1 : externalHumanIndex(doc);
  state.humans.forEach((h, i) => {
    const color = i === extIndex ? COLORS.externalHuman : COLORS.human;
    const s = tf.toScreen(h);
    ctx.fillStyle = color;
    ctx.beginPath();
    ctx.arc(s.x, s.y, Math.max(4, 0.15 * tf.scale), 0, 2 * Math.PI);
    ctx.fill();
    drawWedge(ctx, h, h.theta, tf, color);
  });

  const r = state.robot;
  const rs = tf.toScreen(r);
  ctx.fillStyle = COLORS.robot;
  ctx.beginPath();
  ctx.arc(rs.x, rs.y, Math.max(4, 0.15 * tf.scale), 0, 2 * Math.PI);
  ctx.fill();
  drawWedge(ctx, r, r.theta, tf, COLORS.robot);

  if (view.done !== null) renderOverlay(ctx, view, tf);
}

function fmtMetric(value: unknown): string {
  if (typeof value === "number") return value.toFixed(3);
  return String(value);
}

function renderOverlay(ctx: CanvasRenderingContext2D, view: ViewState, tf: ViewTransform): void {
  const done = view.done;
  if (done === null) return;
  ctx.fillStyle = "rgba(16, 20, 28, 0.82)";
  ctx.fillRect(tf.widthPx / 2 - 130, tf.heightPx / 2 - 62, 260, 124);
  ctx.fillStyle = COLORS.text;
  ctx.font = "bold 15px system-ui, sans-serif";
  ctx.fillText(`outcome: ${done.outcome}`, tf.widthPx / 2 - 112, tf.heightPx / 2 - 36);
  ctx.font = "12px system-ui, sans-serif";
  const rows: Array<[string, unknown]> = [
    ["path length", done.metrics["path_length"]],
    ["min separation", done.metrics["min_separation"]],
    ["time to goal", done.metrics["time_to_goal"]],
  ];
  rows.forEach(([label, value], i) => {
    ctx.fillText(`${label}: ${fmtMetric(value)}`, tf.widthPx / 2 - 112, tf.heightPx / 2 - 12 + 20 * i);
  });
}

export interface ChartOptions {
  label: string;
  color: string;
  bounds: ChartBounds;
  /** Horizontal reference lines, drawn dashed (zero line, u* threshold). */
  refs: number[];
}

export function renderChart(
  ctx: CanvasRenderingContext2D,
  widthPx: number,
  heightPx: number,
  samples: GaugeSample[],
  opts: ChartOptions,
): void {
  ctx.fillStyle = COLORS.ground;
  ctx.fillRect(0, 0, widthPx, heightPx);

  for (const ref of opts.refs) {
    const y = chartY(ref, opts.bounds, heightPx);
    ctx.strokeStyle = COLORS.ref;
    ctx.lineWidth = 1;
    ctx.setLineDash([4, 3]);
    ctx.beginPath();
    ctx.moveTo(0, y);
    ctx.lineTo(widthPx, y);
    ctx.stroke();
    ctx.setLineDash([]);
  }

  if (samples.length >= 2) {
    const t0 = samples[0].t;
    const t1 = samples[samples.length - 1].t;
    const span = Math.max(t1 - t0, 1e-9);
    ctx.strokeStyle = opts.color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    samples.forEach((s, i) => {
      const x = ((s.t - t0) / span) * widthPx;
      const y = chartY(s.value, opts.bounds, heightPx);
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    });
    ctx.stroke();
  }

  ctx.fillStyle = COLORS.text;
  ctx.font = "11px system-ui, sans-serif";
  const current = samples.length > 0 ? samples[samples.length - 1].value.toFixed(3) : "-";
  ctx.fillText(`${opts.label} = ${current}`, 8, 14);
}

/** Draw both strip charts for a view; uStarValue comes from the scenario document. */
export function renderCharts(
  zCtx: CanvasRenderingContext2D,
  uCtx: CanvasRenderingContext2D,
  widthPx: number,
  heightPx: number,
  view: ViewState,
  doc: ScenarioDoc | null,
): void {
  const zSamples = view.zHistory.toArray();
  const uSamples = view.uHistory.toArray();
  const threshold = doc === null ? null : uStar(doc);
  renderChart(zCtx, widthPx, heightPx, zSamples, {
    label: "z",
    color: COLORS.z,
    bounds: zChartBounds(zSamples),
    refs: [0],
  });
  renderChart(uCtx, widthPx, heightPx, uSamples, {
    label: "u",
    color: COLORS.u,
    bounds: uChartBounds(uSamples, threshold),
    refs: threshold === null ? [] : [threshold],
  });
}
