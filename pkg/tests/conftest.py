import json
from pathlib import Path

import pytest

from episim import parse_scenario, run_scenario

SCENARIO_DIR = Path(__file__).resolve().parents[1] / "scenarios"


def load_scenario(name: str):
    return parse_scenario((SCENARIO_DIR / f"{name}.json").read_text())


@pytest.fixture(scope="session")
def scenario_runs():
    """Each shipped scenario run once; reused by conservation/shape checks."""
    runs = {}
    for name in ("fig10", "fig11", "fig12"):
        runs[name] = run_scenario(load_scenario(name))
    return runs


def world_fingerprint(state):
    """Full observable state, for exact trajectory comparisons."""
    return {
        "tick": state.tick,
        "agents": [
            (
                a.id,
                a.home_site,
                a.site,
                a.x,
                a.y,
                a.state.value,
                a.immunity,
                a.heading,
                None
                if a.transit is None
                else (a.transit.route, a.transit.destination, a.transit.ux, a.transit.uy),
            )
            for a in state.agents
        ],
        "sites": {
            n: (s.locked_down, s.local_mobility_allowed) for n, s in state.sites.items()
        },
        "routes": {k: (r.enabled, r.locked_down) for k, r in state.routes.items()},
        "switches": (
            state.switches.propagate_infection,
            state.switches.take_precautions,
            state.switches.start_recovery,
        ),
        "infect_latched": sorted(state.infect_latched),
        "pending_seeds": sorted(state.pending_seeds),
        "rng": state.rng.getstate(),
    }


def two_site_config(**overrides):
    from episim import SimConfig, SiteSpec

    defaults = dict(
        sites=(
            SiteSpec("left", (0.0, 0.0), 10.0),
            SiteSpec("right", (40.0, 0.0), 10.0),
        ),
        routes=(("left", "right"),),
        agents_per_site=10,
    )
    defaults.update(overrides)
    return SimConfig(**defaults)
