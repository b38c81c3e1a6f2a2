"""Command-line front end.

    gyropoint simulate [--config run.yaml] [--seed N] [--out sessions.jsonl]
    gyropoint replay LOG.csv [--preset iteration2] [--calibration 100] [--out trace.csv]
    gyropoint analyze FILES... [--out report.json]
    gyropoint tables (FILES... | --summary LABEL=mean,sd,n ...)
    gyropoint serve [--port 8000] [--data-dir data] [--seed N]
    gyropoint targets [--config run.yaml] [--seed N] [--trial K] [--out targets.json]

Data goes to stdout (or --out); diagnostics go to stderr with a nonzero
exit. `tables` accepts either raw session files or literal summary
statistics, so published numbers can be checked without raw data.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import replace
from pathlib import Path

from ..sensing import FilterParams, calibrate, parse_serial_log
from ..stats import GroupSummary
from ..task import default_devices
from ..transfer import Screen, run_pipeline
from .config import (
    DEFAULT_SEED,
    default_run_config,
    load_run_config,
    reseeded,
    run_config_experiment,
)
from .report import analyze, analyze_summaries, render_report, report_to_dict
from .service import intake_service, targets_payload
from .storage import merge_sessions, read_sessions, sessions_to_jsonl

_SUMMARY_RE = re.compile(r"^(?P<label>[A-Za-z0-9_.-]+)=(?P<mean>[^,]+),(?P<sd>[^,]+),(?P<n>[^,]+)$")


def _write_or_print(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = load_run_config(args.config) if args.config else default_run_config()
    if args.seed is not None:
        cfg = reseeded(cfg, args.seed)
    sessions = run_config_experiment(cfg)
    out = args.out or cfg.output_path
    _write_or_print(sessions_to_jsonl(sessions), out)
    trials = sum(len(s.trials) for s in sessions)
    print(f"simulated {len(sessions)} sessions / {trials} trials", file=sys.stderr)
    return 0


def _cmd_replay(args: argparse.Namespace) -> int:
    samples = parse_serial_log(Path(args.log).read_text(encoding="utf-8"))
    devices = default_devices()
    if args.preset not in devices:
        raise ValueError(f"unknown preset {args.preset!r} (known: {', '.join(devices)})")
    device = devices[args.preset]
    n_cal = min(args.calibration, len(samples))
    cal = calibrate(samples, buffer_len=n_cal) if n_cal > 0 else None
    states = run_pipeline(samples, cal, fp=FilterParams(), p=device, s=Screen())
    lines = ["t,x,y"]
    lines += [f"{c.t:.6f},{c.x!r},{c.y!r}" for c in states]
    _write_or_print("\n".join(lines) + "\n", args.out)
    return 0


def _load_all(paths: list[str]):
    return merge_sessions([read_sessions(p) for p in paths])


def _cmd_analyze(args: argparse.Namespace) -> int:
    report = analyze(_load_all(args.files))
    sys.stdout.write(render_report(report))
    if args.out:
        _write_or_print(json.dumps(report_to_dict(report), indent=2) + "\n", args.out)
    return 0


def _parse_summary(spec: str) -> tuple[str, GroupSummary]:
    m = _SUMMARY_RE.match(spec)
    if not m:
        raise ValueError(f"--summary expects LABEL=mean,sd,n, got {spec!r}")
    try:
        return m["label"], GroupSummary(
            mean=float(m["mean"]), sd=float(m["sd"]), n=int(m["n"])
        )
    except ValueError as exc:
        raise ValueError(f"--summary {spec!r}: {exc}") from None


def _cmd_tables(args: argparse.Namespace) -> int:
    if args.summary and args.files:
        raise ValueError("give either session files or --summary statistics, not both")
    if args.summary:
        pairs = [_parse_summary(s) for s in args.summary]
        labels = [label for label, _ in pairs]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate --summary label")
        report = analyze_summaries(dict(pairs))
    elif args.files:
        report = analyze(_load_all(args.files))
    else:
        raise ValueError("no records (give session files or --summary statistics)")
    sys.stdout.write(render_report(report))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    task = default_run_config().task
    if args.seed is not None:
        task = replace(task, seed=args.seed)
    print(f"serving on http://127.0.0.1:{args.port} (data: {args.data_dir})", file=sys.stderr)
    intake_service(args.port, args.data_dir, task)
    return 0


def _cmd_targets(args: argparse.Namespace) -> int:
    if args.config:
        task = load_run_config(args.config).task
    else:
        task = default_run_config().task
    if args.seed is not None:
        task = replace(task, seed=args.seed)
    if args.trial is not None:
        payload: object = targets_payload(task, args.trial)
    else:
        payload = {
            "seed": task.seed,
            "trials": [
                targets_payload(task, i)
                for i in range(1, task.trials_per_participant + 1)
            ],
        }
    _write_or_print(json.dumps(payload, indent=2) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gyropoint", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the configured experiment, emit session JSONL")
    p.add_argument("--config", help="run-config YAML path")
    p.add_argument("--seed", type=int, help="override master seed and target seed")
    p.add_argument("--out", help="output path (default: config output, else stdout)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("replay", help="serial log -> cursor trace CSV")
    p.add_argument("log", help="serial log file (t,ax,ay,az,gx,gy,gz)")
    p.add_argument(
        "--preset",
        default="iteration2",
        help="transfer preset: iteration1, iteration2 or control (default iteration2)",
    )
    p.add_argument(
        "--calibration",
        type=int,
        default=100,
        help="stationary samples used for bias capture, 0 to skip (default 100)",
    )
    p.add_argument("--out", help="output CSV path (default stdout)")
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("analyze", help="session JSONL file(s) -> report")
    p.add_argument("files", nargs="+", help="session JSONL files")
    p.add_argument("--out", help="also write the report as JSON to this path")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("tables", help="summary and t-test tables from files or literals")
    p.add_argument("files", nargs="*", help="session JSONL files")
    p.add_argument(
        "--summary",
        action="append",
        default=[],
        metavar="LABEL=mean,sd,n",
        help="literal group summary (repeatable)",
    )
    p.set_defaults(func=_cmd_tables)

    p = sub.add_parser("serve", help="start the live session intake service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default="data", help="where sessions.jsonl lives")
    p.add_argument("--seed", type=int, help="default seed for /api/targets")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("targets", help="dump generated target sets as JSON")
    p.add_argument("--config", help="run-config YAML path (geometry source)")
    p.add_argument("--seed", type=int, help="target stream seed (default config seed)")
    p.add_argument("--trial", type=int, help="single trial index (default: all trials)")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_targets)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed usage/help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"gyropoint: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
