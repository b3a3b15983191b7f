"""Infection seeding, proximity propagation, precautions and recovery.

State transitions are exactly susceptible->infected, susceptible->precaution
and infected->recovered; precaution and recovered are absorbing. Propagation
is synchronous: only agents infected before the phase spread this tick.
"""

from __future__ import annotations

import random

import numpy as np

from .errors import SimulationError
from .world import AgentState, WorldState

# below this many candidate pairs the plain double loop beats array setup
_VECTORIZE_THRESHOLD = 4096


def toss_a_coin(rng: random.Random, p: float) -> bool:
    """Single Bernoulli draw: true with probability p."""
    if not 0.0 <= p <= 1.0:
        raise SimulationError(f"probability out of range: {p}")
    return rng.random() < p


def infection_probability(base_prob: float, immunity: float) -> float:
    """Per-contact infection chance, discounted by the target's immunity."""
    return base_prob * (1.0 - immunity)


def seed_infection(state: WorldState, site_name: str, rng: random.Random) -> WorldState:
    """Infect a random batch of susceptible residents; once per site per run."""
    k = rng.randint(*state.config.seed_infect_range)
    candidates = [
        a
        for a in state.residents(site_name)
        if a.state is AgentState.SUSCEPTIBLE
    ]
    n = min(k, len(candidates))
    if n > 0:
        for agent in rng.sample(candidates, n):
            agent.state = AgentState.INFECTED
    return state


def _contact_pairs(infected, susceptible, radius: float):
    """(infected, susceptible) pairs within radius, ordered by (inf id, sus id).

    The vectorized and plain paths compute the identical squared-distance
    expression, so the pair set (and hence the coin draw order) matches the
    straight-line reference exactly.
    """
    r2 = radius * radius
    if len(infected) * len(susceptible) >= _VECTORIZE_THRESHOLD:
        ix = np.array([a.x for a in infected])
        iy = np.array([a.y for a in infected])
        sx = np.array([a.x for a in susceptible])
        sy = np.array([a.y for a in susceptible])
        dx = ix[:, None] - sx[None, :]
        dy = iy[:, None] - sy[None, :]
        hits = np.argwhere(dx * dx + dy * dy <= r2)
        return [(infected[i], susceptible[j]) for i, j in hits]
    pairs = []
    for inf in infected:
        for sus in susceptible:
            dx = inf.x - sus.x
            dy = inf.y - sus.y
            if dx * dx + dy * dy <= r2:
                pairs.append((inf, sus))
    return pairs


def propagate(state: WorldState, rng: random.Random) -> WorldState:
    """Spread infection from the pre-phase infected set to nearby susceptibles.

    Distance is Euclidean, crossing site and transit boundaries alike. An
    agent infected earlier in this phase draws no further coins.
    """
    infected = [a for a in state.agents if a.state is AgentState.INFECTED]
    susceptible = [a for a in state.agents if a.state is AgentState.SUSCEPTIBLE]
    if not infected or not susceptible:
        return state
    base = state.config.base_infection_prob
    newly: set[int] = set()
    for inf, sus in _contact_pairs(infected, susceptible, state.config.infection_radius):
        if sus.id in newly:
            continue
        if toss_a_coin(rng, infection_probability(base, sus.immunity)):
            newly.add(sus.id)
    if newly:
        for agent in state.agents:
            if agent.id in newly:
                agent.state = AgentState.INFECTED
    return state


def do_precautions(state: WorldState, rng: random.Random) -> WorldState:
    """Move a random batch of susceptible agents (world-wide) to precaution."""
    k = rng.randint(*state.config.precaution_per_tick_range)
    candidates = [a for a in state.agents if a.state is AgentState.SUSCEPTIBLE]
    n = min(k, len(candidates))
    if n > 0:
        for agent in rng.sample(candidates, n):
            agent.state = AgentState.PRECAUTION
    return state


def do_recovery(state: WorldState, rng: random.Random) -> WorldState:
    """Move a random batch of infected agents to recovered."""
    k = rng.randint(*state.config.recovery_per_tick_range)
    candidates = [a for a in state.agents if a.state is AgentState.INFECTED]
    n = min(k, len(candidates))
    if n > 0:
        for agent in rng.sample(candidates, n):
            agent.state = AgentState.RECOVERED
    return state
