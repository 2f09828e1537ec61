/**
 * App wiring: DOM, socket, input, render loop.
 *
 * The page talks to the realtime service given by the `?server=` query
 * parameter (default http://127.0.0.1:8000). One session socket is live at a
 * time; picking a scenario reconnects, Restart reopens in place, and loading
 * a session log file switches to offline replay of that log.
 */

import { InputCoalescer, InputMapper, bearing } from "./input.js";
import type { InputMessage, ScenarioDoc } from "./protocol.js";
import { externalHumanIndex } from "./protocol.js";
import { renderArena, renderCharts } from "./render.js";
import { ReplayPlayer, parseSessionLog } from "./replay.js";
import { SessionSocket } from "./socket.js";
import { ViewTransform, extentForScenario } from "./transform.js";
import { ViewState } from "./view.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) throw new Error(`missing element #${id}`);
  return node as T;
}

const statusEl = el<HTMLDivElement>("status");
const pickerEl = el<HTMLSelectElement>("scenario");
const seedEl = el<HTMLInputElement>("seed");
const restartEl = el<HTMLButtonElement>("restart");
const replayFileEl = el<HTMLInputElement>("replay-file");
const exitReplayEl = el<HTMLButtonElement>("exit-replay");
const arenaEl = el<HTMLCanvasElement>("arena");
const zChartEl = el<HTMLCanvasElement>("zchart");
const uChartEl = el<HTMLCanvasElement>("uchart");

const arenaCtx = arenaEl.getContext("2d")!;
const zCtx = zChartEl.getContext("2d")!;
const uCtx = uChartEl.getContext("2d")!;

const params = new URLSearchParams(window.location.search);
const serverBase = (params.get("server") ?? "http://127.0.0.1:8000").replace(/\/$/, "");
const wsBase = serverBase.replace(/^http/, "ws");

let doc: ScenarioDoc | null = null;
let view = new ViewState();
let socket: SessionSocket | null = null;
let transform = new ViewTransform(arenaEl.width, arenaEl.height, { cx: 0, cy: 3, half: 4 });
let mapper: InputMapper | null = null;
const coalescer = new InputCoalescer();
let lastTick = -1;
let replay: ReplayPlayer | null = null;

function setStatus(text: string, kind: "ok" | "warn" | "err"): void {
  statusEl.textContent = text;
  statusEl.dataset.kind = kind;
}

function sendInput(msg: InputMessage | null): void {
  if (msg !== null && socket !== null) socket.send(msg);
}

function onTickAdvance(tick: number): void {
  if (tick <= lastTick) return;
  lastTick = tick;
  sendInput(coalescer.advance());
}

function connect(name: string): void {
  socket?.close();
  view.reset();
  coalescer.reset();
  lastTick = -1;
  const seed = seedEl.value.trim();
  const seedQuery = seed === "" ? "" : `&seed=${encodeURIComponent(seed)}`;
  socket = new SessionSocket(`${wsBase}/ws?scenario=${encodeURIComponent(name)}${seedQuery}`, {
    onMessage(msg) {
      if (msg.type === "state" && doc !== null) {
        onTickAdvance(Math.round(msg.t / doc.dt));
      } else if (msg.type === "ack") {
        onTickAdvance(msg.tick);
      }
      view.apply(msg);
      if (msg.type === "done") setStatus(`done: ${msg.outcome}`, "ok");
      if (msg.type === "error") setStatus(msg.message, "err");
    },
    onStatus(status, detail) {
      if (status === "live") setStatus(`live: ${view.scenarioName ?? ""}`, "ok");
      else if (status === "retrying") setStatus(detail, "warn");
      else if (status === "connecting") setStatus(detail, "warn");
    },
  });
  socket.connect();
}

async function selectScenario(name: string): Promise<void> {
  const res = await fetch(`${serverBase}/scenarios/${encodeURIComponent(name)}`);
  if (!res.ok) {
    setStatus(`scenario ${name}: HTTP ${res.status}`, "err");
    return;
  }
  doc = (await res.json()) as ScenarioDoc;
  view.scenarioName = name;
  transform = new ViewTransform(arenaEl.width, arenaEl.height, extentForScenario(doc));
  const ext = externalHumanIndex(doc);
  mapper =
    ext < 0 ? null : new InputMapper(bearing(doc.humans[ext].start, doc.humans[ext].goal));
  connect(name);
}

async function loadScenarioList(): Promise<void> {
  try {
    const res = await fetch(`${serverBase}/scenarios`);
    const names = (await res.json()) as string[];
    pickerEl.innerHTML = "";
    for (const name of names) {
      const opt = document.createElement("option");
      opt.value = name;
      opt.textContent = name;
      pickerEl.appendChild(opt);
    }
    if (names.length > 0) await selectScenario(names[0]);
  } catch (err) {
    setStatus(`cannot reach ${serverBase}: ${String(err)}`, "err");
    setTimeout(loadScenarioList, 2000);
  }
}

// -- live input -------------------------------------------------------------

const HANDLED_KEYS = new Set([
  "ArrowUp", "ArrowDown", "ArrowLeft", "ArrowRight", " ",
  "s", "S", "l", "L", "r", "R",
]);

window.addEventListener("keydown", (ev) => {
  if (replay !== null || mapper === null || ev.altKey || ev.ctrlKey || ev.metaKey) return;
  if (document.activeElement instanceof HTMLInputElement) return;
  if (!HANDLED_KEYS.has(ev.key)) return;
  ev.preventDefault();
  if (ev.repeat) return;
  const cmd = mapper.keyDown(ev.key);
  if (cmd !== null) sendInput(coalescer.offer(cmd));
});

window.addEventListener("keyup", (ev) => {
  if (replay !== null || mapper === null) return;
  const cmd = mapper.keyUp(ev.key);
  if (cmd !== null) sendInput(coalescer.offer(cmd));
});

arenaEl.addEventListener("click", (ev) => {
  if (replay !== null || mapper === null) return;
  const rect = arenaEl.getBoundingClientRect();
  const screen = {
    x: ((ev.clientX - rect.left) / rect.width) * arenaEl.width,
    y: ((ev.clientY - rect.top) / rect.height) * arenaEl.height,
  };
  sendInput(coalescer.offer(mapper.pointerClick(screen, transform)));
});

pickerEl.addEventListener("change", () => void selectScenario(pickerEl.value));

restartEl.addEventListener("click", () => {
  if (socket === null) return;
  view.reset();
  coalescer.reset();
  lastTick = -1;
  const seed = parseInt(seedEl.value.trim(), 10);
  const msg = Number.isInteger(seed) ? { type: "open" as const, seed } : { type: "open" as const };
  socket.send(msg);
  setStatus(`live: ${view.scenarioName ?? ""}`, "ok");
});

// -- replay -----------------------------------------------------------------

replayFileEl.addEventListener("change", () => {
  const file = replayFileEl.files?.[0];
  if (file === undefined) return;
  void file.text().then((text) => {
    try {
      replay = new ReplayPlayer(parseSessionLog(text));
    } catch (err) {
      setStatus(`replay: ${String(err)}`, "err");
      return;
    }
    socket?.close();
    socket = null;
    exitReplayEl.hidden = false;
    setStatus(`replaying ${file.name}`, "ok");
  });
});

exitReplayEl.addEventListener("click", () => {
  replay = null;
  exitReplayEl.hidden = true;
  replayFileEl.value = "";
  if (view.scenarioName !== null) connect(view.scenarioName);
});

// -- render loop ------------------------------------------------------------

function frame(): void {
  if (replay !== null && !replay.finished) replay.stepOnce();
  const active = replay !== null ? replay.view : view;
  renderArena(arenaCtx, active, transform, doc);
  renderCharts(zCtx, uCtx, zChartEl.width, zChartEl.height, active, doc);
  requestAnimationFrame(frame);
}

setStatus("connecting...", "warn");
void loadScenarioList();
requestAnimationFrame(frame);
