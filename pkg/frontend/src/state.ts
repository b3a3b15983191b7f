/**
 * UI state store. All truth flows from server frames; the switch mirror is
 * only ever updated from hello and snapshot frames, never from local input.
 */

import type { Frame, HelloFrame, MetricsFrame, SnapshotFrame } from "./protocol.js";

const MAX_POINTS = 10_000;

export interface MetricsBuffers {
  ticks: number[];
  infected: number[];
  precaution: number[];
  recovered: number[];
}

export interface UiState {
  connected: boolean;
  hello: HelloFrame | null;
  snapshot: SnapshotFrame | null;
  switches: Record<string, boolean>;
  buffers: MetricsBuffers;
  lastError: string | null;
  /** seq -> switch name for commands awaiting an ack */
  pending: Map<number, string>;
  nextSeq: number;
}

export function initialState(): UiState {
  return {
    connected: false,
    hello: null,
    snapshot: null,
    switches: {},
    buffers: { ticks: [], infected: [], precaution: [], recovered: [] },
    lastError: null,
    pending: new Map(),
    nextSeq: 1,
  };
}

function pushMetrics(buffers: MetricsBuffers, frame: MetricsFrame): void {
  const last = buffers.ticks[buffers.ticks.length - 1];
  if (last !== undefined && frame.tick <= last) {
    // reset or replay: start a fresh series
    buffers.ticks.length = 0;
    buffers.infected.length = 0;
    buffers.precaution.length = 0;
    buffers.recovered.length = 0;
  }
  buffers.ticks.push(frame.tick);
  buffers.infected.push(frame.pct_infected);
  buffers.precaution.push(frame.pct_precaution);
  buffers.recovered.push(frame.pct_recovered);
  if (buffers.ticks.length > MAX_POINTS) {
    buffers.ticks.shift();
    buffers.infected.shift();
    buffers.precaution.shift();
    buffers.recovered.shift();
  }
}

/** Apply one server frame; returns true if anything visible changed. */
export function applyFrame(state: UiState, frame: Frame): boolean {
  switch (frame.type) {
    case "hello":
      state.hello = frame;
      state.switches = { ...frame.switches };
      state.snapshot = null;
      return true;
    case "metrics":
      pushMetrics(state.buffers, frame);
      return true;
    case "snapshot":
      state.snapshot = frame;
      state.switches = { ...frame.switches };
      return true;
    case "ack":
      if (frame.seq !== undefined) {
        state.pending.delete(frame.seq);
      }
      return false;
    case "error": {
      state.lastError = `${frame.code}: ${frame.message}`;
      if (frame.seq !== undefined) {
        state.pending.delete(frame.seq);
      }
      return true;
    }
    case "command":
      return false; // server never sends commands
  }
}
