"""episim: deterministic multi-site agent-based epidemic simulator.

Agents random-walk inside disc-shaped sites, travel between sites over a
route graph, get infected, propagate infection, take precautions and
recover, while switches control infection seeding, lockdowns and mobility
live or from a scripted scenario.
"""

from .config import SimConfig, SiteSpec, parse_config, validate_world
from .errors import (
    ConfigError,
    LatchingViolationError,
    ProtocolError,
    ScenarioError,
    SimulationError,
    UnknownSwitchError,
)
from .metrics import MetricsSample, compute_metrics, export_csv, export_json
from .runner import run_scenario
from .scenario import Scenario, ScenarioEvent, parse_scenario, serialize_scenario
from .world import (
    Agent,
    AgentState,
    Route,
    Site,
    SwitchBoard,
    TransitPlan,
    WorldState,
    apply_switch,
    init_world,
    switch_index,
    switch_states,
    tick,
)

__version__ = "0.1.0"

__all__ = [
    "Agent",
    "AgentState",
    "ConfigError",
    "LatchingViolationError",
    "MetricsSample",
    "ProtocolError",
    "Route",
    "Scenario",
    "ScenarioEvent",
    "SimConfig",
    "SimulationError",
    "Site",
    "SiteSpec",
    "SwitchBoard",
    "TransitPlan",
    "UnknownSwitchError",
    "WorldState",
    "apply_switch",
    "compute_metrics",
    "export_csv",
    "export_json",
    "init_world",
    "parse_config",
    "parse_scenario",
    "run_scenario",
    "serialize_scenario",
    "switch_index",
    "switch_states",
    "tick",
    "validate_world",
]
