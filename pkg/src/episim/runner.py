"""Headless scenario execution: the reference driver for reproducible runs."""

from __future__ import annotations

from .metrics import MetricsSample, compute_metrics
from .scenario import Scenario
from .world import WorldState, apply_switch, init_world, tick


def run_scenario(
    scenario: Scenario,
    seed: int | None = None,
    ticks: int | None = None,
    on_tick=None,
) -> tuple[WorldState, list[MetricsSample]]:
    """Run a scenario to completion and return the final state and series.

    ``seed`` and ``ticks`` override the scenario's own values. Events fire at
    the start of their tick, before anything else moves. ``on_tick(state)``
    is called after every step (and once for the initial state).
    """
    config = scenario.build_config()
    state = init_world(config, scenario.seed if seed is None else seed)
    total = scenario.total_ticks if ticks is None else ticks
    series = [compute_metrics(state)]
    if on_tick is not None:
        on_tick(state)
    pos = 0
    events = scenario.events
    for t in range(total):
        while pos < len(events) and events[pos].at_tick <= t:
            apply_switch(state, events[pos].switch, events[pos].value)
            pos += 1
        tick(state)
        series.append(state.last_metrics)
        if on_tick is not None:
            on_tick(state)
    return state, series
