/**
 * Wire types for the realtime service.
 *
 * These mirror the server's JSON messages field for field; the client treats
 * them as a frozen contract and ignores message types it does not know.
 * Units are SI (meters, seconds, radians), world frame, y up.
 */

export interface Point {
  x: number;
  y: number;
}

export interface RobotState {
  x: number;
  y: number;
  theta: number;
  z: number;
  u: number;
  focal: number | null;
}

export interface HumanState {
  x: number;
  y: number;
  theta: number;
}

export interface StateMessage {
  type: "state";
  t: number;
  robot: RobotState;
  humans: HumanState[];
  goal: Point;
}

export type Outcome = "reached" | "collision" | "timeout";

export interface DoneMessage {
  type: "done";
  outcome: Outcome;
  metrics: Record<string, unknown>;
}

export interface AckMessage {
  type: "ack";
  tick: number;
  clamped: boolean;
}

export interface ErrorMessage {
  type: "error";
  message: string;
}

export type ServerMessage = StateMessage | DoneMessage | AckMessage | ErrorMessage;

export interface HeadingInput {
  type: "input";
  mode: "heading";
  theta: number;
  speed_fraction: number;
}

export interface TargetInput {
  type: "input";
  mode: "target";
  x: number;
  y: number;
  speed_fraction: number;
}

export interface StopInput {
  type: "input";
  mode: "stop";
}

export type InputMessage = HeadingInput | TargetInput | StopInput;

export interface StepMessage {
  type: "step";
  n: number;
}

export interface OpenMessage {
  type: "open";
  scenario?: string;
  seed?: number;
}

export type ClientMessage = InputMessage | StepMessage | OpenMessage;

/** The slice of a scenario document the client actually uses. */
export interface ScenarioDoc {
  name: string;
  dt: number;
  max_time: number;
  goal_tolerance: number;
  collision_radius: number;
  robot: {
    start: { x: number; y: number; theta: number };
    goal: Point;
    speed: number;
    params: { d: number; alpha: number; [extra: string]: unknown };
  };
  humans: Array<{
    start: { x: number; y: number; theta: number };
    goal: Point;
    speed: number;
    policy: { kind: string; [extra: string]: unknown };
  }>;
}

const SERVER_TYPES = new Set(["state", "done", "ack", "error"]);

/**
 * Parse one socket frame. Returns null for frames that are not JSON objects
 * or carry an unknown type, so future server additions cannot break us.
 */
export function parseServerMessage(raw: string): ServerMessage | null {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const type = (data as { type?: unknown }).type;
  if (typeof type !== "string" || !SERVER_TYPES.has(type)) return null;
  return data as ServerMessage;
}

/** Critical attention: above this the neutral opinion destabilizes. */
export function uStar(doc: ScenarioDoc): number {
  return doc.robot.params.d / doc.robot.params.alpha;
}

/** Index of the externally driven human, or -1 if the scenario has none. */
export function externalHumanIndex(doc: ScenarioDoc): number {
  return doc.humans.findIndex((h) => h.policy.kind === "external");
}
