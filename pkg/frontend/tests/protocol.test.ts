import { describe, expect, it } from "vitest";

import {
  decodeFrame,
  encodeFrame,
  isLatching,
  ProtocolError,
  type Frame,
} from "../src/protocol.js";

/** Small deterministic PRNG so the fuzz corpus is reproducible. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function randomFrame(rng: () => number): Frame {
  const pick = <T>(xs: T[]): T => xs[Math.floor(rng() * xs.length)] as T;
  const kind = pick(["command", "ack", "error", "metrics", "snapshot", "hello"]);
  switch (kind) {
    case "command":
      return {
        type: "command",
        kind: pick(["toggle_switch", "pause", "resume", "set_speed", "reset"]),
        switch: `lockdown-site-${Math.floor(rng() * 10)}`,
        value: rng() < 0.5,
        seq: Math.floor(rng() * 1e6),
      };
    case "ack":
      return rng() < 0.5 ? { type: "ack" } : { type: "ack", seq: Math.floor(rng() * 1e6) };
    case "error":
      return {
        type: "error",
        code: pick(["latching_violation", "unknown_switch", "protocol_error"]),
        message: `m${Math.floor(rng() * 1000)}`,
        seq: Math.floor(rng() * 1e6),
      };
    case "metrics":
      return {
        type: "metrics",
        tick: Math.floor(rng() * 5000),
        susceptible: Math.floor(rng() * 500),
        infected: Math.floor(rng() * 500),
        precaution: Math.floor(rng() * 500),
        recovered: Math.floor(rng() * 500),
        pct_infected: Math.round(rng() * 1e6) / 1e4,
        pct_precaution: Math.round(rng() * 1e6) / 1e4,
        pct_recovered: Math.round(rng() * 1e6) / 1e4,
      };
    case "snapshot":
      return {
        type: "snapshot",
        tick: Math.floor(rng() * 5000),
        agents: Array.from({ length: Math.floor(rng() * 5) }, (_, i) => ({
          id: i,
          x: Math.round(rng() * 1e6) / 1e4,
          y: Math.round(rng() * 1e6) / 1e4,
          state: pick(["susceptible", "infected", "precaution", "recovered"] as const),
          home: pick(["red", "blue", "pink"]),
          site: "red",
        })),
        sites: { red: { locked: rng() < 0.5, local_mobility: rng() < 0.5 } },
        routes: { "red-blue": { enabled: rng() < 0.5, locked: rng() < 0.5 } },
        switches: { "infect-red": rng() < 0.5 },
        metrics: null,
      };
    default:
      return {
        type: "hello",
        schema: 1,
        config: {
          sites: [{ name: "red", center: [50, 50], radius: 12 }],
          routes: [["red", "blue"]],
          agents_per_site: Math.floor(rng() * 200),
        },
        switches: { "infect-red": false },
        snapshot_interval: 1 + Math.floor(rng() * 10),
        tick_rate: 1 + rng() * 100,
      };
  }
}

describe("frame round-trip", () => {
  it("decode(encode(x)) is identity for 1000 randomized frames", () => {
    const rng = mulberry32(1234);
    for (let i = 0; i < 1000; i++) {
      const frame = randomFrame(rng);
      expect(decodeFrame(encodeFrame(frame))).toEqual(frame);
    }
  });

  it("every encoded frame is one newline-terminated line", () => {
    const rng = mulberry32(99);
    for (let i = 0; i < 100; i++) {
      const text = encodeFrame(randomFrame(rng));
      expect(text.endsWith("\n")).toBe(true);
      expect(text.slice(0, -1).includes("\n")).toBe(false);
    }
  });
});

describe("decode rejects garbage", () => {
  it.each(["", "   ", "not json", "[1,2]", "42", '{"type":"nope"}', "{}"])(
    "rejects %j",
    (line) => {
      expect(() => decodeFrame(line)).toThrow(ProtocolError);
    },
  );
});

describe("latching classification", () => {
  it("route enables and infect switches latch; the rest do not", () => {
    expect(isLatching("route-red-blue-enable")).toBe(true);
    expect(isLatching("infect-cyan")).toBe(true);
    expect(isLatching("lockdown-red")).toBe(false);
    expect(isLatching("lockdown-red-blue")).toBe(false);
    expect(isLatching("propagate-infection")).toBe(false);
    expect(isLatching("local-mobility-red-allow")).toBe(false);
  });
});
