/**
 * Thin WebSocket wrapper: decodes incoming frames, encodes outgoing ones,
 * reconnects with a fixed backoff. The socket constructor is injectable so
 * tests can substitute a scripted fake.
 */

import { decodeFrame, encodeFrame, type Frame } from "./protocol.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: ((ev?: unknown) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export interface ConnectionHandlers {
  onFrame(frame: Frame): void;
  onStatus(connected: boolean): void;
  onBadFrame?(err: Error): void;
}

const RECONNECT_MS = 1000;

export class Connection {
  private socket: SocketLike | null = null;
  private closed = false;
  private timer: ReturnType<typeof setTimeout> | null = null;

  constructor(
    private url: string,
    private handlers: ConnectionHandlers,
    private factory: SocketFactory = (u) => new WebSocket(u) as unknown as SocketLike,
  ) {}

  open(): void {
    this.closed = false;
    this.dial();
  }

  private dial(): void {
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => this.handlers.onStatus(true);
    socket.onmessage = (ev) => {
      try {
        this.handlers.onFrame(decodeFrame(String(ev.data)));
      } catch (err) {
        this.handlers.onBadFrame?.(err as Error);
      }
    };
    socket.onerror = () => {
      // the close handler owns reconnection
    };
    socket.onclose = () => {
      this.handlers.onStatus(false);
      if (!this.closed) {
        this.timer = setTimeout(() => this.dial(), RECONNECT_MS);
      }
    };
  }

  send(frame: Frame): void {
    if (this.socket === null) {
      throw new Error("connection not open");
    }
    // one frame per message, newline-terminated as on the wire
    this.socket.send(encodeFrame(frame));
  }

  close(): void {
    this.closed = true;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.socket?.close();
  }
}
