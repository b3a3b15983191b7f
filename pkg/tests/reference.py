"""Straight-line single-tick reference implementation.

Re-derives one world step directly from the documented phase order and RNG
draw contract, with plain nested loops and no spatial shortcuts. Used as the
independent oracle for engine equivalence; it deliberately shares no update
code with the engine.
"""

import math

from episim.world import AgentState

TWO_PI = 2.0 * math.pi


def _route_open(state, key):
    r = state.routes[key]
    return (
        r.enabled
        and not r.locked_down
        and not state.sites[r.a].locked_down
        and not state.sites[r.b].locked_down
    )


def _residents(state, name):
    return [a for a in sorted(state.agents, key=lambda a: a.id) if a.site == name]


def reference_tick(state):
    """Advance `state` one step; mirrors the documented contract exactly."""
    cfg = state.config
    rng = state.rng

    # phase 1: seed infection for newly latched infect switches
    if state.pending_seeds:
        for name in cfg.site_names():
            if name not in state.pending_seeds:
                continue
            k = rng.randint(*cfg.seed_infect_range)
            pool = [a for a in _residents(state, name) if a.state is AgentState.SUSCEPTIBLE]
            n = min(k, len(pool))
            if n > 0:
                for a in rng.sample(pool, n):
                    a.state = AgentState.INFECTED
        state.pending_seeds.clear()

    # phase 2: traveler assignment
    if state.tick % cfg.travel_period == 0:
        for name in cfg.site_names():
            neighbors = []
            for ra, rb in cfg.routes:
                if name not in (ra, rb):
                    continue
                if _route_open(state, cfg.route_key(ra, rb)):
                    neighbors.append(rb if ra == name else ra)
            if not neighbors:
                continue
            site = state.sites[name]
            if site.locked_down and not site.local_mobility_allowed:
                continue
            pool = _residents(state, name)
            if not pool:
                continue
            k = rng.randint(*cfg.travel_batch_range)
            n = min(k, len(pool))
            if n == 0:
                continue
            for agent in sorted(rng.sample(pool, n), key=lambda a: a.id):
                dest = rng.choice(neighbors)
                agent.heading = dest
                dst = state.sites[dest]
                d = math.hypot(dst.cx - agent.x, dst.cy - agent.y)
                from episim.world import TransitPlan

                agent.transit = TransitPlan(
                    route=cfg.route_key(name, dest),
                    destination=dest,
                    ux=(dst.cx - agent.x) / d if d else 0.0,
                    uy=(dst.cy - agent.y) / d if d else 0.0,
                )
                agent.site = None

    # phase 3: movement
    for agent in sorted(state.agents, key=lambda a: a.id):
        if agent.transit is not None:
            dst = state.sites[agent.transit.destination]
            dx, dy = dst.cx - agent.x, dst.cy - agent.y
            d = math.hypot(dx, dy)
            step = min(cfg.transit_speed, d)
            if d > 0:
                agent.x += dx / d * step
                agent.y += dy / d * step
            if math.hypot(dst.cx - agent.x, dst.cy - agent.y) <= dst.radius:
                agent.site = dst.name
                agent.heading = None
                agent.transit = None
        else:
            site = state.sites[agent.site]
            if not site.local_mobility_allowed:
                continue
            theta = rng.uniform(0.0, TWO_PI)
            nx = agent.x + cfg.local_step * math.cos(theta)
            ny = agent.y + cfg.local_step * math.sin(theta)
            ddx, ddy = nx - site.cx, ny - site.cy
            dd = math.hypot(ddx, ddy)
            if dd > site.radius:
                nx = site.cx + ddx * (site.radius / dd)
                ny = site.cy + ddy * (site.radius / dd)
            agent.x, agent.y = nx, ny

    # phase 4: synchronous propagation over the pre-phase infected set
    if state.switches.propagate_infection:
        ordered = sorted(state.agents, key=lambda a: a.id)
        infected = [a for a in ordered if a.state is AgentState.INFECTED]
        susceptible = [a for a in ordered if a.state is AgentState.SUSCEPTIBLE]
        r2 = cfg.infection_radius * cfg.infection_radius
        newly = []
        for inf in infected:
            for sus in susceptible:
                if sus in newly:
                    continue
                dx = inf.x - sus.x
                dy = inf.y - sus.y
                if dx * dx + dy * dy <= r2:
                    if rng.random() < cfg.base_infection_prob * (1.0 - sus.immunity):
                        newly.append(sus)
        for a in newly:
            a.state = AgentState.INFECTED

    # phase 5: precautions
    if state.switches.take_precautions:
        k = rng.randint(*cfg.precaution_per_tick_range)
        pool = [a for a in sorted(state.agents, key=lambda a: a.id) if a.state is AgentState.SUSCEPTIBLE]
        n = min(k, len(pool))
        if n > 0:
            for a in rng.sample(pool, n):
                a.state = AgentState.PRECAUTION

    # phase 6: recovery
    if state.switches.start_recovery:
        k = rng.randint(*cfg.recovery_per_tick_range)
        pool = [a for a in sorted(state.agents, key=lambda a: a.id) if a.state is AgentState.INFECTED]
        n = min(k, len(pool))
        if n > 0:
            for a in rng.sample(pool, n):
                a.state = AgentState.RECOVERED

    # phase 7: metrics + clock
    from episim.metrics import compute_metrics

    state.tick += 1
    state.last_metrics = compute_metrics(state)
    return state


def random_micro_world(seed: int):
    """A small randomized world with arbitrary switch and agent states."""
    import random as pyrandom

    from episim import SimConfig, SiteSpec, init_world
    from episim.world import TransitPlan

    meta = pyrandom.Random(seed)
    n_sites = meta.randint(1, 3)
    names = ["a", "b", "c"][:n_sites]
    sites = tuple(
        SiteSpec(name, (45.0 * i, 0.0), meta.uniform(6.0, 12.0))
        for i, name in enumerate(names)
    )
    routes = tuple(
        (names[i], names[j])
        for i in range(n_sites)
        for j in range(i + 1, n_sites)
        if meta.random() < 0.8
    )
    config = SimConfig(
        sites=sites,
        routes=routes,
        agents_per_site=meta.randint(2, 7),
        local_step=meta.uniform(0.2, 2.0),
        transit_speed=meta.uniform(0.5, 3.0),
        infection_radius=meta.uniform(1.0, 25.0),
        base_infection_prob=meta.uniform(0.0, 1.0),
        immunity_range=(0.0, meta.uniform(0.0, 1.0)),
        seed_infect_range=(0, meta.randint(0, 4)),
        travel_batch_range=(0, meta.randint(0, 5)),
        travel_period=meta.randint(1, 3),
        precaution_per_tick_range=(0, meta.randint(0, 3)),
        recovery_per_tick_range=(0, meta.randint(0, 3)),
    )
    state = init_world(config, seed)

    for site in state.sites.values():
        site.locked_down = meta.random() < 0.3
        site.local_mobility_allowed = meta.random() < 0.8
    for route in state.routes.values():
        route.enabled = meta.random() < 0.7
        route.locked_down = meta.random() < 0.3
    state.switches.propagate_infection = meta.random() < 0.7
    state.switches.take_precautions = meta.random() < 0.5
    state.switches.start_recovery = meta.random() < 0.5
    for name in names:
        if meta.random() < 0.4:
            state.infect_latched.add(name)
            if meta.random() < 0.7:
                state.pending_seeds.add(name)

    states = list(AgentState)
    for agent in state.agents:
        agent.state = meta.choice(states)
        if len(names) > 1 and meta.random() < 0.25:
            others = [n for n in names if n != agent.site]
            dest = meta.choice(others)
            key = config.route_key(agent.site, dest)
            dst = state.sites[dest]
            import math as _m

            d = _m.hypot(dst.cx - agent.x, dst.cy - agent.y)
            agent.transit = TransitPlan(
                route=key,
                destination=dest,
                ux=(dst.cx - agent.x) / d,
                uy=(dst.cy - agent.y) / d,
            )
            agent.heading = dest
            agent.site = None
    return state
