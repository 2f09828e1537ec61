/**
 * Session socket with automatic reconnect.
 *
 * Each (re)connection is a fresh server-side session. On drop the client
 * retries with exponential backoff, resetting the delay once a connection
 * delivers a message. A deliberate close() stops the retry loop.
 */

import type { ClientMessage, ServerMessage } from "./protocol.js";
import { parseServerMessage } from "./protocol.js";

/** The subset of the WebSocket API the client uses; injectable for tests. */
export interface WebSocketLike {
  onopen: ((ev: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev: unknown) => void) | null;
  onerror: ((ev: unknown) => void) | null;
  readyState: number;
  send(data: string): void;
  close(): void;
}

export type WebSocketFactory = (url: string) => WebSocketLike;

const WS_OPEN = 1;

export interface SessionSocketOptions {
  /** First retry delay (ms); doubles per failure up to maxBackoffMs. */
  baseBackoffMs?: number;
  maxBackoffMs?: number;
  wsFactory?: WebSocketFactory;
  setTimeoutFn?: (fn: () => void, ms: number) => unknown;
  clearTimeoutFn?: (handle: unknown) => void;
}

export interface SessionSocketCallbacks {
  onMessage(msg: ServerMessage): void;
  /** Called on connect, drop, and retry scheduling; `detail` is human-readable. */
  onStatus(status: "connecting" | "live" | "retrying" | "closed", detail: string): void;
}

export class SessionSocket {
  private ws: WebSocketLike | null = null;
  private closed = false;
  private retryMs: number;
  private retryHandle: unknown = null;
  private readonly base: number;
  private readonly max: number;
  private readonly factory: WebSocketFactory;
  private readonly setT: (fn: () => void, ms: number) => unknown;
  private readonly clearT: (handle: unknown) => void;

  constructor(
    readonly url: string,
    private readonly callbacks: SessionSocketCallbacks,
    opts: SessionSocketOptions = {},
  ) {
    this.base = opts.baseBackoffMs ?? 1000;
    this.max = opts.maxBackoffMs ?? 8000;
    this.retryMs = this.base;
    this.factory = opts.wsFactory ?? ((u) => new WebSocket(u) as unknown as WebSocketLike);
    this.setT = opts.setTimeoutFn ?? ((fn, ms) => setTimeout(fn, ms));
    this.clearT = opts.clearTimeoutFn ?? ((h) => clearTimeout(h as Parameters<typeof clearTimeout>[0]));
  }

  connect(): void {
    if (this.closed) return;
    this.callbacks.onStatus("connecting", `connecting to ${this.url}`);
    const ws = this.factory(this.url);
    this.ws = ws;
    ws.onopen = () => {
      this.callbacks.onStatus("live", "connected");
    };
    ws.onmessage = (ev) => {
      this.retryMs = this.base; // a delivered message proves the link is healthy
      const msg = parseServerMessage(String(ev.data));
      if (msg !== null) this.callbacks.onMessage(msg);
    };
    ws.onerror = () => {
      // the close event that follows drives the retry
    };
    ws.onclose = () => {
      this.ws = null;
      if (this.closed) {
        this.callbacks.onStatus("closed", "closed");
        return;
      }
      const delay = this.retryMs;
      this.retryMs = Math.min(this.retryMs * 2, this.max);
      this.callbacks.onStatus("retrying", `connection lost, retrying in ${delay / 1000}s`);
      this.retryHandle = this.setT(() => this.connect(), delay);
    };
  }

  /** Send a message if the socket is open; returns whether it went out. */
  send(msg: ClientMessage): boolean {
    if (this.ws === null || this.ws.readyState !== WS_OPEN) return false;
    this.ws.send(JSON.stringify(msg));
    return true;
  }

  close(): void {
    this.closed = true;
    if (this.retryHandle !== null) {
      this.clearT(this.retryHandle);
      this.retryHandle = null;
    }
    this.ws?.close();
  }
}
