"""Run configuration, session persistence, reports, intake service, CLI."""

from .config import (
    DEFAULT_SEED,
    GroupSpec,
    RunConfig,
    default_run_config,
    dump_run_config,
    load_run_config,
    reseeded,
    run_config_experiment,
)
from .report import (
    PairComparison,
    Report,
    analyze,
    analyze_summaries,
    render_report,
    report_to_dict,
)
from .service import create_app, intake_service, targets_payload
from .storage import SchemaError, read_sessions, sessions_to_jsonl, write_sessions

__all__ = [
    "DEFAULT_SEED",
    "GroupSpec",
    "RunConfig",
    "default_run_config",
    "dump_run_config",
    "load_run_config",
    "reseeded",
    "run_config_experiment",
    "PairComparison",
    "Report",
    "analyze",
    "analyze_summaries",
    "render_report",
    "report_to_dict",
    "create_app",
    "intake_service",
    "targets_payload",
    "SchemaError",
    "read_sessions",
    "sessions_to_jsonl",
    "write_sessions",
]
