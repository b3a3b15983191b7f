import json

from episim.cli import (
    EXIT_FILE_NOT_FOUND,
    EXIT_INVALID,
    EXIT_OK,
    EXIT_PARSE,
    main,
)
from episim.metrics import CSV_HEADER

from conftest import SCENARIO_DIR

FIG10 = str(SCENARIO_DIR / "fig10.json")


def run_cli(*argv):
    return main(list(argv))


def test_run_writes_csv(tmp_path):
    out = tmp_path / "m.csv"
    code = run_cli("run", "--scenario", FIG10, "--ticks", "30", "--out", str(out))
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == CSV_HEADER
    assert len(lines) == 32  # header + ticks 0..30


def test_run_json_format(tmp_path):
    out = tmp_path / "m.json"
    assert run_cli("run", "--scenario", FIG10, "--ticks", "10", "--out", str(out), "--format", "json") == EXIT_OK
    rows = json.loads(out.read_text())
    assert len(rows) == 11
    assert rows[0]["susceptible"] == 500


def test_run_twice_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_cli("run", "--seed", "42", "--scenario", FIG10, "--ticks", "60", "--out", str(a))
    run_cli("run", "--seed", "42", "--scenario", FIG10, "--ticks", "60", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_missing_scenario_file(tmp_path):
    assert run_cli("run", "--scenario", str(tmp_path / "nope.json"), "--ticks", "5") == EXIT_FILE_NOT_FOUND


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert run_cli("run", "--scenario", str(bad), "--ticks", "5") == EXIT_PARSE


def test_validation_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"config": {"base_infection_prob": 2.0}, "total_ticks": 5}))
    assert run_cli("run", "--scenario", str(bad)) == EXIT_INVALID


def test_free_run_needs_ticks(capsys):
    assert run_cli("run") == EXIT_INVALID
    assert "ticks" in capsys.readouterr().err


def test_run_to_stdout(capsys):
    assert run_cli("run", "--ticks", "3") == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith(CSV_HEADER)
