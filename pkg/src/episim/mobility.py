"""Movement: local random walk, traveler selection and cross-site transit.

Lockdown semantics: a route is open only if it is enabled, not itself locked
down, and neither endpoint site is locked down. Lockdowns stop NEW transit
assignments only; agents already in transit keep moving until they arrive.
A site that is locked down with local mobility disabled has frozen residents.
"""

from __future__ import annotations

import math
import random

from .config import SimConfig
from .errors import SimulationError
from .world import TWO_PI, Agent, Site, TransitPlan, WorldState


def route_open(state: WorldState, pair: tuple[str, str]) -> bool:
    """True if new transit may be assigned along this route right now."""
    try:
        key = state.config.route_key(*pair)
        route = state.routes[key]
    except KeyError:
        raise SimulationError(f"unknown route: {pair[0]}-{pair[1]}") from None
    return (
        route.enabled
        and not route.locked_down
        and not state.sites[route.a].locked_down
        and not state.sites[route.b].locked_down
    )


def open_neighbor_sites(state: WorldState, site_name: str) -> list[str]:
    """Sites reachable from here over open routes, in config route order."""
    out = []
    for a, b in state.config.routes:
        if site_name not in (a, b):
            continue
        key = state.config.route_key(a, b)
        if route_open(state, key):
            out.append(b if a == site_name else a)
    return out


def is_frozen(site: Site) -> bool:
    return site.locked_down and not site.local_mobility_allowed


def local_move(agent: Agent, site: Site, config: SimConfig, rng: random.Random) -> None:
    """One random-walk step inside the site disc; no-op when mobility is off."""
    if not site.local_mobility_allowed:
        return
    theta = rng.uniform(0.0, TWO_PI)
    nx = agent.x + config.local_step * math.cos(theta)
    ny = agent.y + config.local_step * math.sin(theta)
    dx, dy = nx - site.cx, ny - site.cy
    d = math.hypot(dx, dy)
    if d > site.radius:
        # clamp radially back onto the disc boundary
        scale = site.radius / d
        nx = site.cx + dx * scale
        ny = site.cy + dy * scale
    agent.x, agent.y = nx, ny


def mobility_direction(
    agent: Agent, open_neighbors: list[str], rng: random.Random
) -> str | None:
    """Pick a destination uniformly among open-route neighbors; sets heading."""
    if not open_neighbors:
        return None
    agent.heading = rng.choice(open_neighbors)
    return agent.heading


def assign_travelers(state: WorldState, config: SimConfig, rng: random.Random) -> WorldState:
    """Every travel_period ticks, send a random batch from each connected site.

    Selected agents become in-transit immediately; the rest stay home. Frozen
    residents are never selected.
    """
    if state.tick % config.travel_period != 0:
        return state
    for site_name in config.site_names():
        neighbors = open_neighbor_sites(state, site_name)
        if not neighbors:
            continue
        site = state.sites[site_name]
        if is_frozen(site):
            continue
        candidates = state.residents(site_name)
        if not candidates:
            continue
        k = rng.randint(*config.travel_batch_range)
        n = min(k, len(candidates))
        if n == 0:
            continue
        chosen = sorted(rng.sample(candidates, n), key=lambda a: a.id)
        for agent in chosen:
            dest = mobility_direction(agent, neighbors, rng)
            key = config.route_key(site_name, dest)
            dst = state.sites[dest]
            d = math.hypot(dst.cx - agent.x, dst.cy - agent.y)
            ux, uy = ((dst.cx - agent.x) / d, (dst.cy - agent.y) / d) if d else (0.0, 0.0)
            agent.transit = TransitPlan(route=key, destination=dest, ux=ux, uy=uy)
            agent.site = None
    return state


def advance_transit(agent: Agent, state: WorldState) -> None:
    """Move toward the destination center; become resident on entering its disc.

    Runs regardless of lockdowns: a trip started before a lockdown completes.
    """
    dst = state.sites[agent.transit.destination]
    dx, dy = dst.cx - agent.x, dst.cy - agent.y
    d = math.hypot(dx, dy)
    step = min(state.config.transit_speed, d)
    if d > 0:
        agent.x += dx / d * step
        agent.y += dy / d * step
    if math.hypot(dst.cx - agent.x, dst.cy - agent.y) <= dst.radius:
        agent.site = dst.name
        agent.heading = None
        agent.transit = None
