/**
 * Console bootstrap: wire the socket, state store, switch panel, world map
 * and charts together. Everything here is glue; behaviour lives in the
 * imported modules so it stays testable without a browser.
 */

import { Connection } from "./socket.js";
import { applyFrame, initialState } from "./state.js";
import { SwitchPanel } from "./panel.js";
import { WorldView, type Context2DLike } from "./world-view.js";
import { Chart, SERIES } from "./charts.js";
import type { Frame } from "./protocol.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (el === null) {
    throw new Error(`missing element #${id}`);
  }
  return el as T;
}

function context(canvas: HTMLCanvasElement): Context2DLike {
  const ctx = canvas.getContext("2d");
  if (ctx === null) {
    throw new Error("canvas 2d context unavailable");
  }
  return ctx as unknown as Context2DLike;
}

export function boot(): void {
  const state = initialState();

  const statusEl = byId<HTMLElement>("status");
  const tickEl = byId<HTMLElement>("tick");
  const toastEl = byId<HTMLElement>("toast");
  const panelEl = byId<HTMLElement>("switch-panel");
  const mapCanvas = byId<HTMLCanvasElement>("world-map");

  const worldView = new WorldView(context(mapCanvas), mapCanvas.width, mapCanvas.height);
  const charts = SERIES.map((spec, i) => {
    const canvas = byId<HTMLCanvasElement>(`chart-${i}`);
    return new Chart(context(canvas), canvas.width, canvas.height, spec);
  });

  let toastTimer: ReturnType<typeof setTimeout> | null = null;
  const toast = (message: string): void => {
    toastEl.textContent = message;
    toastEl.classList.add("visible");
    if (toastTimer !== null) {
      clearTimeout(toastTimer);
    }
    toastTimer = setTimeout(() => toastEl.classList.remove("visible"), 4000);
  };

  const proto = window.location.protocol === "https:" ? "wss" : "ws";
  const conn = new Connection(`${proto}://${window.location.host}/ws`, {
    onFrame(frame: Frame) {
      const hadHello = state.hello !== null;
      applyFrame(state, frame);
      switch (frame.type) {
        case "hello":
          if (!hadHello) {
            panel.build();
          } else {
            panel.refresh();
          }
          break;
        case "snapshot":
          panel.refresh();
          tickEl.textContent = `tick ${frame.tick}`;
          if (state.hello) {
            worldView.draw(state.hello, frame);
          }
          break;
        case "metrics":
          charts.forEach((c) => c.draw(state.buffers));
          break;
        case "error":
          panel.showError(`${frame.code}: ${frame.message}`);
          break;
        default:
          break;
      }
    },
    onStatus(connected: boolean) {
      state.connected = connected;
      statusEl.textContent = connected ? "connected" : "disconnected";
      statusEl.className = connected ? "status ok" : "status down";
      panel.refresh();
    },
    onBadFrame(err: Error) {
      toast(`bad frame from server: ${err.message}`);
    },
  });

  const panel = new SwitchPanel(panelEl, state, (frame) => conn.send(frame), toast);

  byId<HTMLButtonElement>("btn-pause").addEventListener("click", () =>
    conn.send({ type: "command", kind: "pause", seq: state.nextSeq++ }),
  );
  byId<HTMLButtonElement>("btn-resume").addEventListener("click", () =>
    conn.send({ type: "command", kind: "resume", seq: state.nextSeq++ }),
  );
  byId<HTMLButtonElement>("btn-reset").addEventListener("click", () =>
    conn.send({ type: "command", kind: "reset", seq: state.nextSeq++ }),
  );
  const speedInput = byId<HTMLInputElement>("speed");
  speedInput.addEventListener("change", () => {
    const rate = Number(speedInput.value);
    if (Number.isFinite(rate) && rate > 0) {
      conn.send({ type: "command", kind: "set_speed", tick_rate: rate, seq: state.nextSeq++ });
    }
  });

  conn.open();
}

// auto-boot when loaded as a page module (tests call boot() themselves)
if (typeof document !== "undefined" && document.getElementById("world-map") !== null) {
  boot();
}
