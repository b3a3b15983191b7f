"""Wire protocol: newline-delimited JSON frames for live control and telemetry.

Frame types: command, ack, error, metrics, snapshot, hello. One frame per
line; decode(encode(x)) == x. The same framing is used over the WebSocket
transport (one frame per message) and is transport-agnostic by design.
"""

from __future__ import annotations

from dataclasses import asdict
from typing import Any

import json

from .errors import ProtocolError
from .metrics import MetricsSample
from .world import WorldState, switch_states

SCHEMA_VERSION = 1

FRAME_TYPES = {"command", "ack", "error", "metrics", "snapshot", "hello"}
COMMAND_KINDS = {"toggle_switch", "pause", "resume", "set_speed", "reset"}


def encode_message(frame: dict[str, Any]) -> bytes:
    """Serialize one frame to a newline-terminated JSON line."""
    ftype = frame.get("type")
    if ftype not in FRAME_TYPES:
        raise ProtocolError(f"unknown frame type: {ftype!r}")
    return (json.dumps(frame, separators=(",", ":")) + "\n").encode("utf-8")


def decode_message(data: bytes | str) -> dict[str, Any]:
    """Parse one frame; malformed input raises ProtocolError, never crashes."""
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ProtocolError("frame is not valid UTF-8") from exc
    line = data.strip()
    if not line:
        raise ProtocolError("empty frame")
    try:
        frame = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"malformed frame: {exc.msg}") from exc
    if not isinstance(frame, dict):
        raise ProtocolError("frame must be a JSON object")
    if frame.get("type") not in FRAME_TYPES:
        raise ProtocolError(f"unknown frame type: {frame.get('type')!r}")
    return frame


def validate_command(frame: dict[str, Any]) -> dict[str, Any]:
    """Structural validation of a command frame (switch existence is checked
    against the live world by the service)."""
    kind = frame.get("kind")
    if kind not in COMMAND_KINDS:
        raise ProtocolError(f"unknown command kind: {kind!r}")
    if kind == "toggle_switch":
        if not isinstance(frame.get("switch"), str):
            raise ProtocolError("toggle_switch needs a 'switch' name")
        if not isinstance(frame.get("value"), bool):
            raise ProtocolError("toggle_switch needs a boolean 'value'")
    elif kind == "set_speed":
        rate = frame.get("tick_rate")
        if not isinstance(rate, (int, float)) or rate <= 0:
            raise ProtocolError("set_speed needs a positive 'tick_rate'")
    elif kind == "reset":
        if "seed" in frame and not isinstance(frame["seed"], int):
            raise ProtocolError("reset 'seed' must be an integer")
    return frame


# --- frame builders --------------------------------------------------------

def metrics_frame(sample: MetricsSample) -> dict[str, Any]:
    return {"type": "metrics", **asdict(sample)}


def snapshot_frame(state: WorldState) -> dict[str, Any]:
    agents = []
    for a in state.agents:
        entry: dict[str, Any] = {
            "id": a.id,
            "x": round(a.x, 4),
            "y": round(a.y, 4),
            "state": a.state.value,
            "home": a.home_site,
        }
        if a.transit is not None:
            entry["route"] = f"{a.transit.route[0]}-{a.transit.route[1]}"
            entry["dest"] = a.transit.destination
        else:
            entry["site"] = a.site
        agents.append(entry)
    return {
        "type": "snapshot",
        "tick": state.tick,
        "agents": agents,
        "sites": {
            name: {
                "locked": s.locked_down,
                "local_mobility": s.local_mobility_allowed,
            }
            for name, s in state.sites.items()
        },
        "routes": {
            r.id: {"enabled": r.enabled, "locked": r.locked_down}
            for r in state.routes.values()
        },
        "switches": switch_states(state),
        "metrics": asdict(
            state.last_metrics
        ) if state.last_metrics else None,
    }


def hello_frame(state: WorldState, snapshot_interval: int, tick_rate: float) -> dict[str, Any]:
    return {
        "type": "hello",
        "schema": SCHEMA_VERSION,
        "config": state.config.to_dict(),
        "switches": switch_states(state),
        "snapshot_interval": snapshot_interval,
        "tick_rate": tick_rate,
    }


def ack_frame(seq: Any = None) -> dict[str, Any]:
    frame: dict[str, Any] = {"type": "ack"}
    if seq is not None:
        frame["seq"] = seq
    return frame


def error_frame(code: str, message: str, seq: Any = None) -> dict[str, Any]:
    frame: dict[str, Any] = {"type": "error", "code": code, "message": message}
    if seq is not None:
        frame["seq"] = seq
    return frame
