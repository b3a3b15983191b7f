"""Live control service: FIFO command queue, tick loop and telemetry fan-out.

Exactly one loop owns the WorldState. Clients talk to it only through the
command queue (in) and broadcast frames (out), so commands take effect at
tick boundaries and no client can observe a half-applied command. The
WebSocket transport lives in :func:`create_app`; the service itself is
transport-free and is also what headless tests drive directly.
"""

from __future__ import annotations

import asyncio
import queue
import threading
import time
from typing import Any, Callable

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import Response

from .config import SimConfig
from .errors import LatchingViolationError, SimulationError, UnknownSwitchError
from .metrics import MetricsSample, compute_metrics, export_csv
from .protocol import (
    ack_frame,
    decode_message,
    encode_message,
    error_frame,
    hello_frame,
    metrics_frame,
    snapshot_frame,
    validate_command,
)
from .scenario import Scenario
from .world import WorldState, apply_switch, init_world, switch_index, tick


class SimulationService:
    """Single-writer simulation loop with a FIFO command queue."""

    def __init__(
        self,
        config: SimConfig | None = None,
        seed: int | None = None,
        scenario: Scenario | None = None,
        snapshot_interval: int = 1,
        tick_rate: float | None = 20.0,
    ):
        self.snapshot_interval = snapshot_interval
        self.tick_rate = tick_rate
        self.paused = False
        self._queue: queue.Queue[tuple[Any, dict]] = queue.Queue()
        self._subscribers: dict[Any, Callable[[dict], None]] = {}
        self._lock = threading.Lock()
        self._reset(config, seed, scenario)

    def _reset(
        self,
        config: SimConfig | None,
        seed: int,
        scenario: Scenario | None,
    ) -> None:
        self.scenario = scenario
        if scenario is not None:
            config = scenario.build_config()
            if seed is None:
                seed = scenario.seed
        self.state: WorldState = init_world(config or SimConfig(), seed or 0)
        self.series: list[MetricsSample] = [compute_metrics(self.state)]
        self._event_pos = 0

    # --- client side -------------------------------------------------------

    def subscribe(self, client_id: Any, send: Callable[[dict], None]) -> dict:
        """Register a frame consumer; returns the hello frame to send first."""
        with self._lock:
            self._subscribers[client_id] = send
        return hello_frame(self.state, self.snapshot_interval, self.tick_rate or 0.0)

    def unsubscribe(self, client_id: Any) -> None:
        with self._lock:
            self._subscribers.pop(client_id, None)

    def submit(self, frame: dict, client_id: Any = None) -> dict:
        """Validate and enqueue a command; returns the ack frame.

        Structurally bad frames and unknown switches are rejected here;
        latching violations surface later as an error frame because they are
        checked against the state at application time.
        """
        validate_command(frame)
        if frame["kind"] == "toggle_switch":
            if frame["switch"] not in switch_index(self.state):
                raise UnknownSwitchError(f"unknown switch: {frame['switch']}")
        self._queue.put((client_id, frame))
        return ack_frame(frame.get("seq"))

    # --- loop side ---------------------------------------------------------

    def _publish(self, frame: dict, client_id: Any = None) -> None:
        with self._lock:
            if client_id is not None:
                send = self._subscribers.get(client_id)
                targets = [send] if send else []
            else:
                targets = list(self._subscribers.values())
        for send in targets:
            try:
                send(frame)
            except Exception:
                pass  # a dead client must not stop the loop

    def _apply_command(self, client_id: Any, frame: dict) -> None:
        kind = frame["kind"]
        try:
            if kind == "toggle_switch":
                apply_switch(self.state, frame["switch"], frame["value"])
            elif kind == "pause":
                self.paused = True
            elif kind == "resume":
                self.paused = False
            elif kind == "set_speed":
                self.tick_rate = float(frame["tick_rate"])
            elif kind == "reset":
                scenario = self.scenario
                if frame.get("scenario") is not None:
                    from .scenario import parse_scenario
                    import json as _json

                    scenario = parse_scenario(_json.dumps(frame["scenario"]))
                self._reset(
                    None if scenario else self.state.config,
                    frame.get("seed", 0),
                    scenario,
                )
                self._publish(
                    hello_frame(self.state, self.snapshot_interval, self.tick_rate or 0.0)
                )
        except LatchingViolationError as exc:
            self._publish(error_frame(exc.code, str(exc), frame.get("seq")), client_id)
        except SimulationError as exc:
            self._publish(error_frame(exc.code, str(exc), frame.get("seq")), client_id)

    def _drain_queue(self) -> int:
        n = 0
        while True:
            try:
                client_id, frame = self._queue.get_nowait()
            except queue.Empty:
                return n
            self._apply_command(client_id, frame)
            n += 1

    def step(self) -> None:
        """One loop iteration: scenario events, queued commands, then a tick."""
        applied = self._drain_queue()
        if self.paused:
            if applied:
                # reflect switch changes immediately while paused
                self._publish(snapshot_frame(self.state))
            return
        events = self.scenario.events if self.scenario else ()
        while self._event_pos < len(events) and events[self._event_pos].at_tick <= self.state.tick:
            ev = events[self._event_pos]
            try:
                apply_switch(self.state, ev.switch, ev.value)
            except SimulationError as exc:
                self._publish(error_frame(exc.code, str(exc)))
            self._event_pos += 1
        tick(self.state)
        self.series.append(self.state.last_metrics)
        self._publish(metrics_frame(self.state.last_metrics))
        if self.state.tick % self.snapshot_interval == 0:
            self._publish(snapshot_frame(self.state))

    def run(
        self,
        stop: threading.Event | None = None,
        max_ticks: int | None = None,
    ) -> None:
        """Drive the loop until ``stop`` is set or ``max_ticks`` is reached.

        With no tick_rate the loop is unthrottled (headless mode).
        """
        while True:
            if stop is not None and stop.is_set():
                return
            if max_ticks is not None and self.state.tick >= max_ticks:
                return
            started = time.monotonic()
            self.step()
            if self.tick_rate:
                delay = 1.0 / self.tick_rate - (time.monotonic() - started)
                if delay > 0:
                    if stop is not None:
                        stop.wait(delay)
                    else:
                        time.sleep(delay)

    def metrics_csv(self) -> bytes:
        return export_csv(self.series)


def create_app(service: SimulationService, ui_dir: str | None = None):
    """FastAPI app: WebSocket control channel, CSV export and the UI bundle."""
    app = FastAPI()
    app.state.service = service

    @app.get("/metrics.csv")
    def metrics_csv() -> Response:
        return Response(content=service.metrics_csv(), media_type="text/csv")

    @app.websocket("/ws")
    async def ws_endpoint(websocket: WebSocket) -> None:
        await websocket.accept()
        loop = asyncio.get_running_loop()
        outbox: asyncio.Queue[dict] = asyncio.Queue()
        client_id = object()

        def push(frame: dict) -> None:
            loop.call_soon_threadsafe(outbox.put_nowait, frame)

        hello = service.subscribe(client_id, push)
        await websocket.send_text(encode_message(hello).decode())

        async def sender() -> None:
            while True:
                frame = await outbox.get()
                await websocket.send_text(encode_message(frame).decode())

        send_task = asyncio.create_task(sender())
        try:
            while True:
                raw = await websocket.receive_text()
                seq = None
                try:
                    frame = decode_message(raw)
                    seq = frame.get("seq")
                    if frame["type"] != "command":
                        raise SimulationError(f"unexpected frame type: {frame['type']}")
                    reply = service.submit(frame, client_id)
                except SimulationError as exc:
                    reply = error_frame(exc.code, str(exc), seq)
                await websocket.send_text(encode_message(reply).decode())
        except WebSocketDisconnect:
            pass
        finally:
            send_task.cancel()
            service.unsubscribe(client_id)

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app
