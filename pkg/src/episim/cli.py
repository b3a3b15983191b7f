"""Command line entry point: headless scenario runs and live serve mode.

Exit codes: 0 success, 2 bad usage (argparse), 3 file not found,
4 parse/syntax error, 5 config or scenario validation failure,
6 server bind failure.
"""

from __future__ import annotations

import argparse
import signal
import sys
import threading
from pathlib import Path

from .config import SimConfig, parse_config
from .errors import ConfigError, ScenarioError
from .metrics import export_csv, export_json
from .runner import run_scenario
from .scenario import Scenario, parse_scenario
from .service import SimulationService, create_app

EXIT_OK = 0
EXIT_FILE_NOT_FOUND = 3
EXIT_PARSE = 4
EXIT_INVALID = 5
EXIT_BIND = 6


def _read(path: str) -> str:
    p = Path(path)
    if not p.is_file():
        raise FileNotFoundError(path)
    return p.read_text()


def _load_inputs(args) -> tuple[Scenario, int | None]:
    """Build the effective scenario from --scenario/--config/--seed/--ticks."""
    if args.scenario:
        scenario = parse_scenario(_read(args.scenario))
    else:
        scenario = Scenario()
    if args.config:
        # --config replaces the scenario's config overrides wholesale
        parse_config(_read(args.config))  # surface errors with positions
        import json

        scenario = Scenario(
            config_overrides=json.loads(_read(args.config)),
            seed=scenario.seed,
            total_ticks=scenario.total_ticks,
            events=scenario.events,
        )
        scenario.build_config()
    return scenario, args.seed


def cmd_run(args) -> int:
    scenario, seed = _load_inputs(args)
    ticks = args.ticks if args.ticks is not None else scenario.total_ticks
    if ticks <= 0:
        print("run mode needs --ticks or a scenario with total_ticks > 0", file=sys.stderr)
        return EXIT_INVALID
    _, series = run_scenario(scenario, seed=seed, ticks=ticks)
    payload = export_json(series) if args.format == "json" else export_csv(series)
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.buffer.write(payload)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    scenario, seed = _load_inputs(args)
    service = SimulationService(
        seed=seed if seed is not None else scenario.seed,
        scenario=scenario if (args.scenario or scenario.events) else None,
        config=None if args.scenario else scenario.build_config(),
        snapshot_interval=args.snapshot_interval,
        tick_rate=args.tick_rate,
    )
    ui_dir = args.ui_dir
    if ui_dir is None:
        candidate = Path(__file__).resolve().parents[2].parent / "frontend" / "dist"
        ui_dir = str(candidate) if candidate.is_dir() else None
        if ui_dir is None and Path("frontend/dist").is_dir():
            ui_dir = "frontend/dist"
    app = create_app(service, ui_dir=ui_dir)

    stop = threading.Event()
    worker = threading.Thread(target=service.run, args=(stop,), daemon=True)
    worker.start()
    print(f"serving on http://{args.host}:{args.port} (ws: /ws, csv: /metrics.csv)")
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except SystemExit as exc:  # uvicorn turns bind errors into SystemExit(1)
        return EXIT_BIND if exc.code else EXIT_OK
    finally:
        stop.set()
        worker.join(timeout=5)
        if args.out:
            Path(args.out).write_bytes(service.metrics_csv())
            print(f"metrics flushed to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="episim",
        description="Deterministic multi-site epidemic simulator",
    )
    sub = parser.add_subparsers(dest="mode", required=True)

    run = sub.add_parser("run", help="headless scenario run")
    run.add_argument("--config", help="JSON config file (overrides scenario config)")
    run.add_argument("--scenario", help="JSON scenario file")
    run.add_argument("--seed", type=int, help="RNG seed (overrides scenario seed)")
    run.add_argument("--ticks", type=int, help="number of ticks (overrides scenario)")
    run.add_argument("--out", help="output path (default: stdout)")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    run.set_defaults(func=cmd_run)

    serve = sub.add_parser("serve", help="live control server")
    serve.add_argument("--config", help="JSON config file")
    serve.add_argument("--scenario", help="JSON scenario file (scripted events)")
    serve.add_argument("--seed", type=int, help="RNG seed")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--snapshot-interval", type=int, default=1)
    serve.add_argument("--tick-rate", type=float, default=20.0)
    serve.add_argument("--out", help="flush metrics CSV here on exit")
    serve.add_argument("--ui-dir", help="static UI bundle directory")
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"file not found: {exc}", file=sys.stderr)
        return EXIT_FILE_NOT_FOUND
    except (ConfigError, ScenarioError) as exc:
        msg = str(exc)
        print(f"{exc.code}: {msg}", file=sys.stderr)
        if "syntax error" in msg:
            return EXIT_PARSE
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
