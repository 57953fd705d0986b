"""Command-line entry points: validate, run, replay, serve, report."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .engine import ActionCommand, SessionEvent, commands_from_log, replay, run_script, state_hash
from .errors import FiredrillError, IncompatibleLog, ReplayDivergence
from .scenario import parse_scenario, validate_scenario
from .scoring import ScoreReport, TaskChecklist, cohort_analysis, emit_report, load_profiles
from .server import ServerConfig, serve


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        print(f"error: cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None


def _load_scenario(path: str):
    try:
        return parse_scenario(_read(path))
    except FiredrillError as exc:
        print(f"error: {path}: {exc}", file=sys.stderr)
        raise SystemExit(2) from None


def cmd_validate(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args.scenario)
    report = validate_scenario(scenario)
    sys.stdout.write(report.to_jsonl())
    return 0 if report.ok else 1


def _load_script(path: str) -> list[ActionCommand]:
    commands = []
    for i, line in enumerate(_read(path).decode("utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            commands.append(ActionCommand.from_obj(json.loads(line)))
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            print(f"error: {path}:{i}: bad command: {exc}", file=sys.stderr)
            raise SystemExit(2) from None
    return commands


def cmd_run(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args.scenario)
    commands = _load_script(args.script)
    try:
        session, report = run_script(scenario, commands, seed=args.seed)
    except FiredrillError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        Path(args.out).write_text("\n".join(session.log_lines()) + "\n", encoding="utf-8")
    obj = report.to_obj()
    obj["state_hash"] = state_hash(session)
    print(json.dumps(obj, indent=2, sort_keys=True))
    if not report.completed:
        return 3
    return 0 if not report.errors else 1


def cmd_replay(args: argparse.Namespace) -> int:
    scenario = _load_scenario(args.scenario)
    lines = _read(args.log).decode("utf-8").splitlines()
    try:
        session = replay(lines, scenario)
    except ReplayDivergence as exc:
        print(f"replay diverged at tick {exc.tick}: {exc.detail}", file=sys.stderr)
        return 1
    except IncompatibleLog as exc:
        print(f"incompatible log: {exc}", file=sys.stderr)
        return 2
    print(f"replay ok: {len(lines)} events, state hash {state_hash(session)}")
    return 0


def _times_from_logs(log_dir: str) -> list[tuple[str, str, float]]:
    """(tester, level, seconds) from <tester>__<anything>.jsonl event logs."""
    rows = []
    for path in sorted(Path(log_dir).glob("*.jsonl")):
        tester = path.stem.split("__", 1)[0]
        lines = path.read_text(encoding="utf-8").splitlines()
        events = [SessionEvent.from_line(line) for line in lines if line.strip()]
        level = events[0].payload.get("scenario_id", "?")
        total_ticks = events[-1].payload.get("total_ticks")
        if total_ticks is None:
            raise ValueError(f"{path} has no session_finished event")
        from .engine import TICK_S

        rows.append((tester, level, round(total_ticks * TICK_S, 3)))
    return rows


def _times_from_csv(path: str) -> list[tuple[str, str, float]]:
    import csv
    import io

    text = _read(path).decode("utf-8")
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != ["tester_id", "level", "time_s"]:
        print("error: times CSV header must be tester_id,level,time_s", file=sys.stderr)
        raise SystemExit(2)
    return [(row["tester_id"].strip(), row["level"].strip(), float(row["time_s"])) for row in reader]


def cmd_report(args: argparse.Namespace) -> int:
    profiles = {p.tester_id: p for p in load_profiles(_read(args.profiles).decode("utf-8"))}
    if args.times:
        rows = _times_from_csv(args.times)
    elif args.logs:
        rows = _times_from_logs(args.logs)
    else:
        print("error: provide --times or --logs", file=sys.stderr)
        return 2
    entries = []
    for tester, level, seconds in rows:
        if tester not in profiles:
            print(f"error: no profile for tester {tester!r}", file=sys.stderr)
            return 2
        stub = ScoreReport(
            scenario_id=level,
            total_time_s=seconds,
            per_phase_time_s={},
            checklist=TaskChecklist(),
            errors=[],
            completed=True,
        )
        entries.append((profiles[tester], level, stub))
    try:
        cohort = cohort_analysis(entries, reference_tester=args.reference)
    except FiredrillError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    rendered = emit_report(cohort, fmt=args.format)
    if args.out:
        Path(args.out).write_bytes(rendered)
    else:
        sys.stdout.write(rendered.decode("utf-8"))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    config = ServerConfig(
        scenario_dir=Path(args.scenarios) if args.scenarios else None,
        log_dir=Path(args.out) if args.out else None,
        speed=args.speed,
        ui_dir=Path(args.ui) if args.ui else None,
    )
    serve(args.host, args.port, config)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="firedrill", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a scenario file against the compliance rules")
    p.add_argument("scenario", help="scenario file path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("run", help="run a command script against a scenario")
    p.add_argument("--scenario", required=True)
    p.add_argument("--script", required=True, help="JSON-lines file of commands")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the event log here")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("replay", help="re-execute an event log and verify it byte for byte")
    p.add_argument("log", help="event log path")
    p.add_argument("--scenario", required=True)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("serve", help="run the live session server")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--scenarios", help="directory of scenario files (default: built-in levels)")
    p.add_argument("--out", help="directory for session event logs")
    p.add_argument("--speed", type=float, default=1.0, help="simulated seconds per wall second")
    p.add_argument("--ui", help="serve this directory as the web client")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("report", help="cohort analytics over session times and tester profiles")
    p.add_argument("--profiles", required=True, help="CSV: tester_id,exp_fire_drills,exp_vr,exp_games")
    p.add_argument("--times", help="CSV: tester_id,level,time_s")
    p.add_argument("--logs", help="directory of <tester>__<level>.jsonl event logs")
    p.add_argument("--reference", default="1", help="reference tester id")
    p.add_argument("--format", choices=["json", "table", "csv"], default="table")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
