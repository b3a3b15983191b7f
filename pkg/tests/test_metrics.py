import json

from episim import SimConfig, apply_switch, compute_metrics, init_world, tick
from episim.metrics import (
    CSV_HEADER,
    MetricsSample,
    export_csv,
    export_json,
    sample_from_counts,
    series_from_json,
)
from episim.world import AgentState


def test_counts_and_percentages():
    state = init_world(SimConfig(), 0)
    for a in state.agents[:25]:
        a.state = AgentState.INFECTED
    m = compute_metrics(state)
    assert m.infected == 25
    assert m.pct_infected == 5.0
    assert m.total == 500


def test_fresh_world_all_zero():
    m = compute_metrics(init_world(SimConfig(), 1))
    assert (m.pct_infected, m.pct_precaution, m.pct_recovered) == (0.0, 0.0, 0.0)
    assert m.susceptible == 500


def test_partition_property():
    state = init_world(SimConfig(), 2)
    for name in state.sites:
        apply_switch(state, f"infect-{name}", True)
    apply_switch(state, "propagate-infection", True)
    apply_switch(state, "take-precautions", True)
    apply_switch(state, "start-recovery", True)
    for _ in range(40):
        tick(state)
        m = state.last_metrics
        assert m.susceptible + m.infected + m.precaution + m.recovered == 500
        assert abs(
            m.pct_susceptible + m.pct_infected + m.pct_precaution + m.pct_recovered - 100.0
        ) < 1e-9


def test_zero_population_percentages_are_zero():
    m = sample_from_counts(0, {"susceptible": 0, "infected": 0, "precaution": 0, "recovered": 0})
    assert (m.pct_infected, m.pct_precaution, m.pct_recovered, m.pct_susceptible) == (
        0.0,
        0.0,
        0.0,
        0.0,
    )


def test_csv_empty_series_is_header_only():
    assert export_csv([]) == (CSV_HEADER + "\n").encode()


def test_csv_single_row_format():
    sample = sample_from_counts(
        0, {"susceptible": 500, "infected": 0, "precaution": 0, "recovered": 0}
    )
    body = export_csv([sample]).decode()
    assert body.splitlines()[1] == "0,500,0,0,0,0.0000,0.0000,0.0000"
    assert "\r" not in body


def test_csv_is_deterministic():
    samples = [
        sample_from_counts(
            t, {"susceptible": 500 - t, "infected": t, "precaution": 0, "recovered": 0}
        )
        for t in range(10)
    ]
    assert export_csv(samples) == export_csv(samples)


def test_json_empty_series():
    assert json.loads(export_json([])) == []


def test_json_round_trip_and_field_names():
    samples = [
        sample_from_counts(
            t, {"susceptible": 490, "infected": 7, "precaution": 2, "recovered": 1}
        )
        for t in range(5)
    ]
    blob = export_json(samples)
    assert series_from_json(blob) == samples
    fields = list(json.loads(blob)[0].keys())
    assert fields == CSV_HEADER.split(",")
