"""Exception hierarchy. Every error carries a stable machine-readable code."""


class SimulationError(Exception):
    code = "simulation_error"


class ConfigError(SimulationError):
    """Invalid configuration; message names the offending field."""

    code = "invalid_config"

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class ScenarioError(SimulationError):
    code = "invalid_scenario"


class UnknownSwitchError(SimulationError):
    code = "unknown_switch"


class LatchingViolationError(SimulationError):
    """A latching switch (route-enable, infect-site) cannot go true -> false."""

    code = "latching_violation"


class ProtocolError(SimulationError):
    code = "protocol_error"
