/**
 * Minimal hand-drawn line charts for the three percentage series. Same
 * 2D-context-like contract as the world view so tests can record calls.
 */

import type { Context2DLike } from "./world-view.js";
import type { MetricsBuffers } from "./state.js";

export interface SeriesSpec {
  label: string;
  color: string;
  values: (buffers: MetricsBuffers) => number[];
}

export const SERIES: SeriesSpec[] = [
  { label: "% infected", color: "#d32f2f", values: (b) => b.infected },
  { label: "% precaution", color: "#f9a825", values: (b) => b.precaution },
  { label: "% recovered", color: "#1565c0", values: (b) => b.recovered },
];

const PAD = 24;

export class Chart {
  constructor(
    private ctx: Context2DLike,
    private width: number,
    private height: number,
    private spec: SeriesSpec,
  ) {}

  draw(buffers: MetricsBuffers): void {
    const ctx = this.ctx;
    const { width: w, height: h } = this;
    ctx.clearRect(0, 0, w, h);
    ctx.fillStyle = "#10141a";
    ctx.fillRect(0, 0, w, h);

    // axes
    ctx.strokeStyle = "#39424e";
    ctx.lineWidth = 1;
    ctx.setLineDash([]);
    ctx.beginPath();
    ctx.moveTo(PAD, 4);
    ctx.lineTo(PAD, h - PAD);
    ctx.lineTo(w - 4, h - PAD);
    ctx.stroke();

    ctx.fillStyle = "#cfd8e3";
    ctx.font = "11px sans-serif";
    ctx.textAlign = "left";
    ctx.fillText(this.spec.label, PAD + 4, 14);

    const ys = this.spec.values(buffers);
    const xs = buffers.ticks;
    if (xs.length < 2) {
      return;
    }
    const x0 = xs[0] ?? 0;
    const x1 = xs[xs.length - 1] ?? 1;
    const span = Math.max(1, x1 - x0);
    const plotW = w - PAD - 4;
    const plotH = h - PAD - 8;

    ctx.strokeStyle = this.spec.color;
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    for (let i = 0; i < xs.length; i++) {
      const px = PAD + (((xs[i] ?? 0) - x0) / span) * plotW;
      const py = h - PAD - ((ys[i] ?? 0) / 100) * plotH;
      if (i === 0) {
        ctx.moveTo(px, py);
      } else {
        ctx.lineTo(px, py);
      }
    }
    ctx.stroke();

    const latest = ys[ys.length - 1] ?? 0;
    ctx.fillStyle = this.spec.color;
    ctx.textAlign = "right";
    ctx.fillText(`${latest.toFixed(2)}%`, w - 6, 14);
  }
}
