"""World model: domain types, world construction, switches and the tick loop.

The simulation is a discrete-time loop over a fixed, normative phase order.
One call to :func:`tick` runs, in this order:

  1. seed infection for every infect switch latched since the last tick
     (sites visited in config declaration order),
  2. traveler assignment (every ``travel_period`` ticks),
  3. movement: local random walk for residents, straight-line advance for
     agents in transit,
  4. infection propagation (if ``propagate-infection`` is on),
  5. precaution adoption (if ``take-precautions`` is on),
  6. recovery (if ``start-recovery`` is on),
  7. metrics computation,

then increments the tick counter. Switch commands must be applied between
ticks (via :func:`apply_switch`); they never take effect mid-tick.

Deterministic draw order
------------------------
All randomness comes from the single ``random.Random`` stream owned by
``WorldState``. Equal (config, seed, command schedule) gives an equal
trajectory. The exact sequence of draws is part of the public contract so
that independent reference implementations can reproduce runs bit-for-bit:

* init: per site in config order, per agent: ``random()`` (radial),
  ``uniform(0, 2*pi)`` (angle), ``uniform(*immunity_range)``.
* phase 1, per pending site in config order: ``randint(*seed_infect_range)``,
  then (if both the draw and the susceptible-resident pool are non-zero)
  ``sample(residents_sorted_by_id, n)``.
* phase 2 (only when ``tick % travel_period == 0``), per site in config
  order with at least one open incident route and at least one movable
  resident: ``randint(*travel_batch_range)``; if the clamped count n > 0,
  ``sample(residents_sorted_by_id, n)``, then per chosen agent in ascending
  id order ``choice(open_neighbor_sites)`` where the neighbor list follows
  config route declaration order.
* phase 3, per agent in ascending id order: residents of a site whose local
  mobility is allowed draw ``uniform(0, 2*pi)``; frozen residents and
  in-transit agents draw nothing.
* phase 4: for each pre-phase Infected agent in ascending id order, for each
  Susceptible agent in ascending id order whose squared distance
  ``dx*dx + dy*dy`` is <= ``infection_radius**2``: one ``random()`` coin,
  skipped (no draw) if that susceptible was already infected this phase.
* phases 5 and 6: ``randint(*range)``, then ``sample(candidates_sorted_by_id,
  n)`` if the clamped count n > 0.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum

from .config import SimConfig, route_id, validate_world
from .errors import ConfigError, LatchingViolationError, UnknownSwitchError
from .metrics import MetricsSample, compute_state_counts

TWO_PI = 2.0 * math.pi


class AgentState(str, Enum):
    SUSCEPTIBLE = "susceptible"
    INFECTED = "infected"
    PRECAUTION = "precaution"
    RECOVERED = "recovered"


@dataclass
class Site:
    name: str
    cx: float
    cy: float
    radius: float
    locked_down: bool = False
    local_mobility_allowed: bool = True


@dataclass
class Route:
    a: str
    b: str
    enabled: bool = False
    locked_down: bool = False

    @property
    def key(self) -> tuple[str, str]:
        return (self.a, self.b)

    @property
    def id(self) -> str:
        return route_id(self.key)


@dataclass
class TransitPlan:
    """An in-flight trip along a route toward a destination site."""

    route: tuple[str, str]
    destination: str
    ux: float  # unit direction at departure, toward the destination center
    uy: float


@dataclass
class Agent:
    id: int
    home_site: str
    site: str | None  # None while in transit
    x: float
    y: float
    state: AgentState = AgentState.SUSCEPTIBLE
    immunity: float = 0.0
    heading: str | None = None  # destination site while in transit
    transit: TransitPlan | None = None

    @property
    def in_transit(self) -> bool:
        return self.transit is not None

    @property
    def my_precaution(self) -> bool:
        return self.state is AgentState.PRECAUTION

    @property
    def my_infection(self) -> bool:
        return self.state is AgentState.INFECTED


@dataclass
class SwitchBoard:
    """Global model toggles; per-site/per-route flags live on Site/Route."""

    propagate_infection: bool = False
    take_precautions: bool = False
    start_recovery: bool = False


@dataclass
class WorldState:
    config: SimConfig
    tick: int
    agents: list[Agent]
    sites: dict[str, Site]
    routes: dict[tuple[str, str], Route]
    switches: SwitchBoard
    rng: random.Random
    infect_latched: set[str] = field(default_factory=set)
    pending_seeds: set[str] = field(default_factory=set)
    last_metrics: MetricsSample | None = None

    def residents(self, site_name: str) -> list[Agent]:
        """Resident agents of a site, ascending id (agents list is id-sorted)."""
        return [a for a in self.agents if a.site == site_name]


def init_world(config: SimConfig, seed: int) -> WorldState:
    """Build the initial world: all agents susceptible, all switches off."""
    violations = validate_world(config)
    if violations:
        raise ConfigError(violations[0].split(":")[0], "; ".join(violations))
    rng = random.Random(seed)
    sites = {s.name: Site(s.name, s.center[0], s.center[1], s.radius) for s in config.sites}
    routes = {}
    for a, b in config.routes:
        key = config.route_key(a, b)
        routes[key] = Route(*key)
    agents: list[Agent] = []
    lo, hi = config.immunity_range
    for spec in config.sites:
        for _ in range(config.agents_per_site):
            r = spec.radius * math.sqrt(rng.random())
            theta = rng.uniform(0.0, TWO_PI)
            immunity = rng.uniform(lo, hi)
            agents.append(
                Agent(
                    id=len(agents),
                    home_site=spec.name,
                    site=spec.name,
                    x=spec.center[0] + r * math.cos(theta),
                    y=spec.center[1] + r * math.sin(theta),
                    immunity=immunity,
                )
            )
    return WorldState(
        config=config,
        tick=0,
        agents=agents,
        sites=sites,
        routes=routes,
        switches=SwitchBoard(),
        rng=rng,
    )


# --- switch identifiers ----------------------------------------------------

def switch_index(state: WorldState) -> dict[str, tuple]:
    """Map every valid switch name to its (kind, key) target.

    Route switches accept both endpoint orders; the canonical spelling uses
    the config's site declaration order.
    """
    index: dict[str, tuple] = {}
    for key in state.routes:
        a, b = key
        for rid in (f"{a}-{b}", f"{b}-{a}"):
            index[f"route-{rid}-enable"] = ("route_enable", key)
            index[f"lockdown-{rid}"] = ("route_lockdown", key)
    for name in state.sites:
        index[f"lockdown-{name}"] = ("site_lockdown", name)
        index[f"local-mobility-{name}-allow"] = ("local_mobility", name)
        index[f"infect-{name}"] = ("infect", name)
    index["propagate-infection"] = ("propagate",)
    index["take-precautions"] = ("precaution",)
    index["start-recovery"] = ("recovery",)
    return index


def switch_states(state: WorldState) -> dict[str, bool]:
    """Current value of all switches, canonical names only."""
    out: dict[str, bool] = {}
    for key, route in state.routes.items():
        out[f"route-{route_id(key)}-enable"] = route.enabled
    for key, route in state.routes.items():
        out[f"lockdown-{route_id(key)}"] = route.locked_down
    for name, site in state.sites.items():
        out[f"lockdown-{name}"] = site.locked_down
    for name, site in state.sites.items():
        out[f"local-mobility-{name}-allow"] = site.local_mobility_allowed
    for name in state.sites:
        out[f"infect-{name}"] = name in state.infect_latched
    out["propagate-infection"] = state.switches.propagate_infection
    out["take-precautions"] = state.switches.take_precautions
    out["start-recovery"] = state.switches.start_recovery
    return out


def apply_switch(state: WorldState, switch: str, value: bool) -> None:
    """Apply one switch command; must be called between ticks.

    Raises UnknownSwitchError for unrecognized names and
    LatchingViolationError for true->false on a latching switch, leaving the
    state unchanged in both cases. Locking a site also locks every incident
    route (closure); unlocking a site does not unlock anything else, and an
    incident route cannot be unlocked until the site is.
    """
    target = switch_index(state).get(switch)
    if target is None:
        raise UnknownSwitchError(f"unknown switch: {switch}")
    kind = target[0]
    if kind == "route_enable":
        route = state.routes[target[1]]
        if route.enabled and not value:
            raise LatchingViolationError(
                f"route-{route.id}-enable cannot be turned off for this run"
            )
        route.enabled = route.enabled or value
    elif kind == "route_lockdown":
        route = state.routes[target[1]]
        if not value and (
            state.sites[route.a].locked_down or state.sites[route.b].locked_down
        ):
            # closure: a route stays locked while an endpoint site is locked;
            # unlock the site first, then the route
            return
        route.locked_down = value
    elif kind == "site_lockdown":
        site = state.sites[target[1]]
        site.locked_down = value
        if value:
            for key, route in state.routes.items():
                if site.name in key:
                    route.locked_down = True
    elif kind == "local_mobility":
        state.sites[target[1]].local_mobility_allowed = value
    elif kind == "infect":
        name = target[1]
        if name in state.infect_latched and not value:
            raise LatchingViolationError(
                f"infect-{name} cannot be turned off for this run"
            )
        if value and name not in state.infect_latched:
            state.infect_latched.add(name)
            state.pending_seeds.add(name)
    elif kind == "propagate":
        state.switches.propagate_infection = value
    elif kind == "precaution":
        state.switches.take_precautions = value
    elif kind == "recovery":
        state.switches.start_recovery = value


# --- tick orchestration ----------------------------------------------------

def tick(state: WorldState) -> WorldState:
    """Advance the world one step through the fixed phase order."""
    from . import epidemic, mobility
    from .metrics import compute_metrics

    # 1. seed infection for switches latched since the last tick
    if state.pending_seeds:
        for name in state.config.site_names():
            if name in state.pending_seeds:
                epidemic.seed_infection(state, name, state.rng)
        state.pending_seeds.clear()

    # 2. traveler assignment
    mobility.assign_travelers(state, state.config, state.rng)

    # 3. movement
    for agent in state.agents:
        if agent.transit is not None:
            mobility.advance_transit(agent, state)
        else:
            mobility.local_move(agent, state.sites[agent.site], state.config, state.rng)

    # 4-6. epidemic phases
    if state.switches.propagate_infection:
        epidemic.propagate(state, state.rng)
    if state.switches.take_precautions:
        epidemic.do_precautions(state, state.rng)
    if state.switches.start_recovery:
        epidemic.do_recovery(state, state.rng)

    # 7. metrics, then advance the clock
    state.tick += 1
    state.last_metrics = compute_metrics(state)
    return state


def state_counts(state: WorldState) -> dict[str, int]:
    return compute_state_counts(a.state.value for a in state.agents)
