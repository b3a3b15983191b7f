"""Per-tick state counts and percentage series, plus CSV/JSON export.

``pct_infected`` counts currently infected agents (it drops once recovery
starts); the cumulative ever-infected count is ``infected + recovered``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from typing import Iterable

_STATE_ORDER = ("susceptible", "infected", "precaution", "recovered")

CSV_HEADER = "tick,susceptible,infected,precaution,recovered,pct_infected,pct_precaution,pct_recovered"


@dataclass(frozen=True)
class MetricsSample:
    tick: int
    susceptible: int
    infected: int
    precaution: int
    recovered: int
    pct_infected: float
    pct_precaution: float
    pct_recovered: float

    @property
    def total(self) -> int:
        return self.susceptible + self.infected + self.precaution + self.recovered

    @property
    def pct_susceptible(self) -> float:
        return 100.0 * self.susceptible / self.total if self.total else 0.0


def compute_state_counts(states: Iterable[str]) -> dict[str, int]:
    counts = dict.fromkeys(_STATE_ORDER, 0)
    for s in states:
        counts[s] += 1
    return counts


def sample_from_counts(tick: int, counts: dict[str, int]) -> MetricsSample:
    total = sum(counts.values())

    def pct(n: int) -> float:
        return 100.0 * n / total if total else 0.0

    return MetricsSample(
        tick=tick,
        susceptible=counts["susceptible"],
        infected=counts["infected"],
        precaution=counts["precaution"],
        recovered=counts["recovered"],
        pct_infected=pct(counts["infected"]),
        pct_precaution=pct(counts["precaution"]),
        pct_recovered=pct(counts["recovered"]),
    )


def compute_metrics(state) -> MetricsSample:
    """Exact counts and percentages for the world's current tick."""
    return sample_from_counts(
        state.tick, compute_state_counts(a.state.value for a in state.agents)
    )


def export_csv(series: Iterable[MetricsSample]) -> bytes:
    """Deterministic CSV: one row per tick, percentages to 4 decimals, LF only."""
    lines = [CSV_HEADER]
    for s in series:
        lines.append(
            f"{s.tick},{s.susceptible},{s.infected},{s.precaution},{s.recovered},"
            f"{s.pct_infected:.4f},{s.pct_precaution:.4f},{s.pct_recovered:.4f}"
        )
    return ("\n".join(lines) + "\n").encode("utf-8")


def export_json(series: Iterable[MetricsSample]) -> bytes:
    """Same data as the CSV as a JSON array of objects, same field names."""
    return json.dumps([asdict(s) for s in series], indent=2).encode("utf-8")


def series_from_json(data: bytes | str) -> list[MetricsSample]:
    return [MetricsSample(**row) for row in json.loads(data)]
