#!/usr/bin/env python3
"""Run the full three-group experiment from a config and keep the records.

The pipeline a study session actually goes through:

  config -> simulate all participants -> report -> JSONL on disk -> re-analyze

The last step matters most: the analysis of what was written must equal
the analysis of what was simulated, or the archive is not an archive.

Run:  python3 demos/04_full_experiment.py
"""

import tempfile
from pathlib import Path

from gyropoint.harness import (
    analyze,
    default_run_config,
    dump_run_config,
    read_sessions,
    render_report,
    run_config_experiment,
    write_sessions,
)

cfg = default_run_config()
print("the default configuration, as it would sit in a YAML file:")
print()
print(dump_run_config(cfg))

sessions = run_config_experiment(cfg)
trials = sum(len(s.trials) for s in sessions)
print(f"simulated {len(sessions)} sessions, {trials} trials")
print()

report = analyze(sessions)
print(render_report(report))

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "sessions.jsonl"
    write_sessions(sessions, path)
    n_lines = len(path.read_text().splitlines())
    print(f"wrote {n_lines} JSONL lines ({path.stat().st_size} bytes) to {path.name}")

    back = read_sessions(path)
    match = analyze(back) == report
    print(f"re-analyzed from disk; reports identical: {match}")
