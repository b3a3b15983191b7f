/**
 * World map renderer. Pure: takes a 2D-context-like interface and draws the
 * latest snapshot, so tests can pass a recording stub instead of a canvas.
 *
 * Visual language:
 *  - site: filled disc in the site's own colour, ring when locked
 *  - route: line between centers; solid when open, dashed when disabled,
 *    red-dashed when locked
 *  - agent: small dot colored by home site, ringed by epidemic state
 */

import type { HelloFrame, SnapshotFrame } from "./protocol.js";

export interface Context2DLike {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  globalAlpha: number;
  font: string;
  textAlign: CanvasTextAlign;
  beginPath(): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  rect(x: number, y: number, w: number, h: number): void;
  fill(): void;
  stroke(): void;
  clearRect(x: number, y: number, w: number, h: number): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  setLineDash(segments: number[]): void;
}

const FALLBACK_COLORS = ["#888", "#b8860b", "#2e8b57", "#6a5acd", "#708090"];

const STATE_COLORS: Record<string, string> = {
  susceptible: "#2f7d32",
  infected: "#d32f2f",
  precaution: "#f9a825",
  recovered: "#1565c0",
};

const CSS_COLORS = new Set([
  "red", "blue", "pink", "cyan", "yellow", "green", "orange", "purple",
  "magenta", "brown", "gray", "black", "teal", "navy", "olive", "maroon",
]);

export function siteColor(name: string, index: number): string {
  if (CSS_COLORS.has(name)) {
    return name;
  }
  return FALLBACK_COLORS[index % FALLBACK_COLORS.length] ?? "#888";
}

export class WorldView {
  constructor(
    private ctx: Context2DLike,
    private width: number,
    private height: number,
  ) {}

  /** Map world coordinates (0..100 plane) onto the canvas. */
  private tx(x: number): number {
    return (x / 100) * this.width;
  }

  private ty(y: number): number {
    // world y grows upward, canvas y grows downward
    return this.height - (y / 100) * this.height;
  }

  private scale(r: number): number {
    return (r / 100) * Math.min(this.width, this.height);
  }

  draw(hello: HelloFrame, snapshot: SnapshotFrame): void {
    const ctx = this.ctx;
    ctx.clearRect(0, 0, this.width, this.height);
    ctx.fillStyle = "#10141a";
    ctx.fillRect(0, 0, this.width, this.height);

    const centers = new Map<string, [number, number]>();
    hello.config.sites.forEach((s) => centers.set(s.name, s.center));

    // routes under everything else
    for (const [a, b] of hello.config.routes) {
      const key = `${a}-${b}`;
      const status = snapshot.routes[key] ?? snapshot.routes[`${b}-${a}`];
      const ca = centers.get(a);
      const cb = centers.get(b);
      if (!status || !ca || !cb) {
        continue;
      }
      if (status.locked) {
        ctx.strokeStyle = "#d32f2f";
        ctx.setLineDash([4, 4]);
      } else if (!status.enabled) {
        ctx.strokeStyle = "#444";
        ctx.setLineDash([2, 6]);
      } else {
        ctx.strokeStyle = "#9aa5b1";
        ctx.setLineDash([]);
      }
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      ctx.moveTo(this.tx(ca[0]), this.ty(ca[1]));
      ctx.lineTo(this.tx(cb[0]), this.ty(cb[1]));
      ctx.stroke();
    }
    ctx.setLineDash([]);

    // site discs
    hello.config.sites.forEach((site, i) => {
      const status = snapshot.sites[site.name];
      const cx = this.tx(site.center[0]);
      const cy = this.ty(site.center[1]);
      const r = this.scale(site.radius);
      ctx.globalAlpha = 0.25;
      ctx.fillStyle = siteColor(site.name, i);
      ctx.beginPath();
      ctx.arc(cx, cy, r, 0, Math.PI * 2);
      ctx.fill();
      ctx.globalAlpha = 1;
      if (status?.locked) {
        ctx.strokeStyle = "#d32f2f";
        ctx.lineWidth = 2.5;
        ctx.beginPath();
        ctx.arc(cx, cy, r, 0, Math.PI * 2);
        ctx.stroke();
      }
      ctx.fillStyle = "#cfd8e3";
      ctx.font = "12px sans-serif";
      ctx.textAlign = "center";
      ctx.fillText(site.name, cx, cy - r - 4);
    });

    // agents on top, colored by epidemic state with a home-site rim
    const homeIndex = new Map<string, number>();
    hello.config.sites.forEach((s, i) => homeIndex.set(s.name, i));
    for (const agent of snapshot.agents) {
      const cx = this.tx(agent.x);
      const cy = this.ty(agent.y);
      ctx.fillStyle = STATE_COLORS[agent.state] ?? "#fff";
      ctx.beginPath();
      ctx.arc(cx, cy, 2.5, 0, Math.PI * 2);
      ctx.fill();
      ctx.strokeStyle = siteColor(agent.home, homeIndex.get(agent.home) ?? 0);
      ctx.lineWidth = 1;
      ctx.beginPath();
      ctx.arc(cx, cy, 3.5, 0, Math.PI * 2);
      ctx.stroke();
    }
  }
}
