/**
 * Wire protocol shared with the simulation server: newline-delimited JSON
 * frames, one per WebSocket message. The server is authoritative; the UI
 * only mirrors the switchboard it announces.
 */

export const FRAME_TYPES = ["command", "ack", "error", "metrics", "snapshot", "hello"] as const;
export type FrameType = (typeof FRAME_TYPES)[number];

export interface SiteConfig {
  name: string;
  center: [number, number];
  radius: number;
}

export interface SimConfigView {
  sites: SiteConfig[];
  routes: [string, string][];
  agents_per_site: number;
  [key: string]: unknown;
}

export interface HelloFrame {
  type: "hello";
  schema: number;
  config: SimConfigView;
  switches: Record<string, boolean>;
  snapshot_interval: number;
  tick_rate: number;
}

export interface MetricsFrame {
  type: "metrics";
  tick: number;
  susceptible: number;
  infected: number;
  precaution: number;
  recovered: number;
  pct_infected: number;
  pct_precaution: number;
  pct_recovered: number;
}

export interface SnapshotAgent {
  id: number;
  x: number;
  y: number;
  state: "susceptible" | "infected" | "precaution" | "recovered";
  home: string;
  site?: string;
  route?: string;
  dest?: string;
}

export interface SnapshotFrame {
  type: "snapshot";
  tick: number;
  agents: SnapshotAgent[];
  sites: Record<string, { locked: boolean; local_mobility: boolean }>;
  routes: Record<string, { enabled: boolean; locked: boolean }>;
  switches: Record<string, boolean>;
  metrics: Omit<MetricsFrame, "type"> | null;
}

export interface CommandFrame {
  type: "command";
  kind: "toggle_switch" | "pause" | "resume" | "set_speed" | "reset";
  switch?: string;
  value?: boolean;
  tick_rate?: number;
  seed?: number;
  seq?: number;
}

export interface AckFrame {
  type: "ack";
  seq?: number;
}

export interface ErrorFrame {
  type: "error";
  code: string;
  message: string;
  seq?: number;
}

export type Frame =
  | HelloFrame
  | MetricsFrame
  | SnapshotFrame
  | CommandFrame
  | AckFrame
  | ErrorFrame;

export class ProtocolError extends Error {}

export function encodeFrame(frame: Frame): string {
  if (!FRAME_TYPES.includes(frame.type)) {
    throw new ProtocolError(`unknown frame type: ${String(frame.type)}`);
  }
  return JSON.stringify(frame) + "\n";
}

export function decodeFrame(line: string): Frame {
  const text = line.trim();
  if (text.length === 0) {
    throw new ProtocolError("empty frame");
  }
  let parsed: unknown;
  try {
    parsed = JSON.parse(text);
  } catch (err) {
    throw new ProtocolError(`malformed frame: ${(err as Error).message}`);
  }
  if (typeof parsed !== "object" || parsed === null || Array.isArray(parsed)) {
    throw new ProtocolError("frame must be a JSON object");
  }
  const type = (parsed as { type?: unknown }).type;
  if (typeof type !== "string" || !FRAME_TYPES.includes(type as FrameType)) {
    throw new ProtocolError(`unknown frame type: ${String(type)}`);
  }
  return parsed as Frame;
}

/** Latching switches may never be turned off once on. */
export function isLatching(name: string): boolean {
  return name.endsWith("-enable") || name.startsWith("infect-");
}
