"""Simulation configuration: world geometry, population and rate parameters.

Every tuning knob that drives the model is an explicit field here; a run is
fully determined by (SimConfig, seed, command schedule).
"""

from __future__ import annotations

import dataclasses
import json
import math
from dataclasses import dataclass

from .errors import ConfigError

DEFAULT_SITE_LAYOUT = (
    ("red", (50.0, 50.0)),
    ("blue", (15.0, 15.0)),
    ("pink", (85.0, 15.0)),
    ("cyan", (85.0, 85.0)),
    ("yellow", (15.0, 85.0)),
)

DEFAULT_ROUTES = (
    ("red", "blue"),
    ("red", "pink"),
    ("red", "cyan"),
    ("red", "yellow"),
    ("blue", "yellow"),
    ("blue", "pink"),
    ("pink", "cyan"),
    ("cyan", "yellow"),
)

DEFAULT_SITE_RADIUS = 12.0


@dataclass(frozen=True)
class SiteSpec:
    name: str
    center: tuple[float, float]
    radius: float = DEFAULT_SITE_RADIUS


@dataclass(frozen=True)
class SimConfig:
    sites: tuple[SiteSpec, ...] = tuple(
        SiteSpec(name, center) for name, center in DEFAULT_SITE_LAYOUT
    )
    routes: tuple[tuple[str, str], ...] = DEFAULT_ROUTES
    agents_per_site: int = 100
    local_step: float = 1.0
    transit_speed: float = 1.5
    infection_radius: float = 2.0
    base_infection_prob: float = 0.6
    immunity_range: tuple[float, float] = (0.0, 0.5)
    seed_infect_range: tuple[int, int] = (3, 8)
    travel_batch_range: tuple[int, int] = (2, 8)
    travel_period: int = 20
    precaution_per_tick_range: tuple[int, int] = (1, 4)
    recovery_per_tick_range: tuple[int, int] = (1, 4)

    def site_names(self) -> list[str]:
        return [s.name for s in self.sites]

    def site(self, name: str) -> SiteSpec:
        for s in self.sites:
            if s.name == name:
                return s
        raise KeyError(name)

    def route_key(self, a: str, b: str) -> tuple[str, str]:
        """Canonical unordered-pair key: endpoints in site declaration order."""
        order = {s.name: i for i, s in enumerate(self.sites)}
        if a not in order or b not in order:
            raise KeyError((a, b))
        return (a, b) if order[a] <= order[b] else (b, a)

    def to_dict(self) -> dict:
        return {
            "sites": [
                {"name": s.name, "center": list(s.center), "radius": s.radius}
                for s in self.sites
            ],
            "routes": [list(r) for r in self.routes],
            "agents_per_site": self.agents_per_site,
            "local_step": self.local_step,
            "transit_speed": self.transit_speed,
            "infection_radius": self.infection_radius,
            "base_infection_prob": self.base_infection_prob,
            "immunity_range": list(self.immunity_range),
            "seed_infect_range": list(self.seed_infect_range),
            "travel_batch_range": list(self.travel_batch_range),
            "travel_period": self.travel_period,
            "precaution_per_tick_range": list(self.precaution_per_tick_range),
            "recovery_per_tick_range": list(self.recovery_per_tick_range),
        }


def route_id(pair: tuple[str, str]) -> str:
    return f"{pair[0]}-{pair[1]}"


def validate_world(config: SimConfig) -> list[str]:
    """Check config invariants. Returns a list of violations; empty means valid."""
    violations: list[str] = []
    names = [s.name for s in config.sites]
    if len(set(names)) != len(names):
        violations.append("sites: duplicate site names")
    for s in config.sites:
        if s.radius <= 0:
            violations.append(f"sites[{s.name}].radius: must be > 0")
    for i, a in enumerate(config.sites):
        for b in config.sites[i + 1 :]:
            d = math.dist(a.center, b.center)
            if d <= a.radius + b.radius:
                violations.append(
                    f"sites: discs of {a.name} and {b.name} overlap"
                )
    seen: set[tuple[str, str]] = set()
    for pair in config.routes:
        a, b = pair
        if a == b:
            violations.append(f"routes[{route_id(pair)}]: endpoints must differ")
            continue
        if a not in names or b not in names:
            violations.append(f"routes[{route_id(pair)}]: unknown site endpoint")
            continue
        key = config.route_key(a, b)
        if key in seen:
            violations.append(f"routes[{route_id(pair)}]: duplicate route")
        seen.add(key)

    if config.agents_per_site < 0:
        violations.append("agents_per_site: must be >= 0")
    if config.local_step < 0:
        violations.append("local_step: must be >= 0")
    if config.transit_speed <= 0:
        violations.append("transit_speed: must be > 0")
    if config.infection_radius <= 0:
        violations.append("infection_radius: must be > 0")
    if not 0.0 <= config.base_infection_prob <= 1.0:
        violations.append("base_infection_prob: must be in [0, 1]")
    lo, hi = config.immunity_range
    if not (0.0 <= lo <= hi <= 1.0):
        violations.append("immunity_range: must satisfy 0 <= lo <= hi <= 1")
    for field in (
        "seed_infect_range",
        "travel_batch_range",
        "precaution_per_tick_range",
        "recovery_per_tick_range",
    ):
        rlo, rhi = getattr(config, field)
        if rlo < 0 or rhi < rlo:
            violations.append(f"{field}: must satisfy 0 <= lo <= hi")
    if config.travel_period < 1:
        violations.append("travel_period: must be >= 1")
    return violations


_INT_RANGE_FIELDS = {
    "seed_infect_range",
    "travel_batch_range",
    "precaution_per_tick_range",
    "recovery_per_tick_range",
}


def config_from_dict(data: dict) -> SimConfig:
    """Build a SimConfig from a plain dict of overrides on the defaults.

    Unknown fields are rejected; the result is validated.
    """
    if not isinstance(data, dict):
        raise ConfigError("config", "must be a JSON object")
    known = {f.name for f in dataclasses.fields(SimConfig)}
    kwargs: dict = {}
    for key, value in data.items():
        if key not in known:
            raise ConfigError(key, "unknown config field")
        if key == "sites":
            try:
                kwargs["sites"] = tuple(
                    SiteSpec(
                        name=str(s["name"]),
                        center=(float(s["center"][0]), float(s["center"][1])),
                        radius=float(s.get("radius", DEFAULT_SITE_RADIUS)),
                    )
                    for s in value
                )
            except (TypeError, KeyError, IndexError, ValueError) as exc:
                raise ConfigError("sites", f"malformed site entry ({exc})") from exc
        elif key == "routes":
            try:
                kwargs["routes"] = tuple((str(a), str(b)) for a, b in value)
            except (TypeError, ValueError) as exc:
                raise ConfigError("routes", "each route must be a pair of site names") from exc
        elif key == "immunity_range":
            kwargs[key] = (float(value[0]), float(value[1]))
        elif key in _INT_RANGE_FIELDS:
            kwargs[key] = (int(value[0]), int(value[1]))
        elif key in ("agents_per_site", "travel_period"):
            kwargs[key] = int(value)
        else:
            kwargs[key] = float(value)
    config = SimConfig(**kwargs)
    violations = validate_world(config)
    if violations:
        raise ConfigError(violations[0].split(":")[0], "; ".join(violations))
    return config


def parse_config(text: str) -> SimConfig:
    """Parse a JSON config document; unspecified fields take the defaults."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("json", f"syntax error at line {exc.lineno} col {exc.colno}") from exc
    return config_from_dict(data)
