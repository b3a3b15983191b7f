"""Scenario files: scripted switch schedules with config overrides and a seed.

A scenario makes any interactive session reproducible headlessly. Format is
a single JSON object:

    {
      "config": { ... SimConfig overrides ... },
      "seed": 42,
      "total_ticks": 2000,
      "events": [
        {"at_tick": 0, "switch": "infect-red", "value": true},
        ...
      ]
    }

Events are applied at the start of the named tick, before phase 1; ties keep
file order. Latching violations that are statically decidable (turning
route-enable or infect-site off after on) are rejected at parse time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .config import SimConfig, config_from_dict
from .errors import ConfigError, ScenarioError
from .world import init_world, switch_index

_LATCHING_KINDS = {"route_enable", "infect"}
_TOP_LEVEL_FIELDS = {"config", "seed", "total_ticks", "events"}


@dataclass(frozen=True)
class ScenarioEvent:
    at_tick: int
    switch: str
    value: bool


@dataclass(frozen=True)
class Scenario:
    config_overrides: dict = field(default_factory=dict)
    seed: int = 0
    total_ticks: int = 0
    events: tuple[ScenarioEvent, ...] = ()

    def build_config(self) -> SimConfig:
        return config_from_dict(self.config_overrides)

    def to_dict(self) -> dict:
        return {
            "config": self.config_overrides,
            "seed": self.seed,
            "total_ticks": self.total_ticks,
            "events": [
                {"at_tick": e.at_tick, "switch": e.switch, "value": e.value}
                for e in self.events
            ],
        }


def serialize_scenario(scenario: Scenario) -> str:
    return json.dumps(scenario.to_dict(), indent=2)


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"syntax error at line {exc.lineno} col {exc.colno}"
        ) from exc
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    for key in data:
        if key not in _TOP_LEVEL_FIELDS:
            raise ScenarioError(f"unknown scenario field: {key}")

    overrides = data.get("config", {})
    try:
        config = config_from_dict(overrides)
    except ConfigError as exc:
        raise ScenarioError(f"invalid config override: {exc}") from exc

    total_ticks = int(data.get("total_ticks", 0))
    if total_ticks < 0:
        raise ScenarioError("total_ticks must be >= 0")
    seed = int(data.get("seed", 0))

    raw_events = data.get("events", [])
    if not isinstance(raw_events, list):
        raise ScenarioError("events must be a list")
    # validate switch names against the effective world of this scenario
    index = switch_index(init_world(config, 0))
    events: list[ScenarioEvent] = []
    for i, raw in enumerate(raw_events):
        if not isinstance(raw, dict) or set(raw) != {"at_tick", "switch", "value"}:
            raise ScenarioError(f"events[{i}]: need exactly at_tick, switch, value")
        at_tick = raw["at_tick"]
        if not isinstance(at_tick, int) or at_tick < 0:
            raise ScenarioError(f"events[{i}]: at_tick must be a non-negative integer")
        switch = raw["switch"]
        if switch not in index:
            raise ScenarioError(f"events[{i}]: unknown switch {switch!r}")
        if not isinstance(raw["value"], bool):
            raise ScenarioError(f"events[{i}]: value must be a boolean")
        events.append(ScenarioEvent(at_tick, switch, raw["value"]))

    events.sort(key=lambda e: e.at_tick)  # stable: ties keep file order
    latched: set[str] = set()
    for e in events:
        kind, *key = index[e.switch]
        if kind not in _LATCHING_KINDS:
            continue
        target = (kind, tuple(key))
        if e.value:
            latched.add(target)
        elif target in latched:
            raise ScenarioError(
                f"latching violation: {e.switch} turned off at tick {e.at_tick} "
                "after being turned on"
            )
    return Scenario(
        config_overrides=overrides,
        seed=seed,
        total_ticks=total_ticks,
        events=tuple(events),
    )
