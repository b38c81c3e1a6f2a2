"""HTTP intake for live sessions, plus report and target-geometry endpoints.

POST /api/sessions   one session's trials (line-schema objects, source=live)
GET  /api/report     counts per group/source and the current Report
GET  /api/targets    generated target set for (seed, trial_index)
GET  /api/health     liveness probe

Uploads append to <data_dir>/sessions.jsonl in the same canonical line form
the simulator writes, so live and simulated records are one corpus. Appends
are serialized by a process-wide lock; handlers are plain functions so the
server may run them on worker threads.
"""

from __future__ import annotations

import threading
from dataclasses import replace
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..task import TaskConfig, generate_targets
from .config import default_run_config
from .report import analyze, report_to_dict
from .storage import (
    SchemaError,
    config_snapshot,
    collate_sessions,
    dump_line,
    read_sessions,
)

SESSIONS_FILENAME = "sessions.jsonl"


def targets_payload(cfg: TaskConfig, trial_index: int) -> dict:
    """Target geometry for one trial, plus the config snapshot an uploader
    should echo back, so live runs replicate simulated geometry exactly."""
    targets = generate_targets(cfg, trial_index)
    return {
        "seed": cfg.seed,
        "trial_index": trial_index,
        "radius_px": cfg.target_radius,
        "dwell_s": cfg.dwell,
        "timeout_s": cfg.timeout,
        "screen": {"width": cfg.screen.width, "height": cfg.screen.height},
        "config": config_snapshot(cfg),
        "targets": [{"x_px": x, "y_px": y} for x, y in targets],
    }


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(data_dir: str | Path, task: TaskConfig | None = None) -> FastAPI:
    """Build the intake app rooted at data_dir (created if missing).

    An existing sessions file is parsed up front: corrupt storage should
    fail service startup, not the first request that happens to read it.
    """
    data_dir = Path(data_dir)
    data_dir.mkdir(parents=True, exist_ok=True)
    sessions_path = data_dir / SESSIONS_FILENAME
    default_task = task if task is not None else default_run_config().task

    lock = threading.Lock()
    seen_ids: set[str] = set()
    if sessions_path.exists():
        seen_ids.update(s.session_id for s in read_sessions(sessions_path))

    app = FastAPI(title="gyropoint intake")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/api/targets")
    def targets(
        seed: int | None = None,
        trial_index: int = 1,
        count: int | None = None,
        radius: float | None = None,
        spacing: float | None = None,
        width: int | None = None,
        height: int | None = None,
        dwell: float | None = None,
    ):
        overrides: dict[str, Any] = {}
        if seed is not None:
            overrides["seed"] = seed
        if count is not None:
            overrides["targets_per_trial"] = count
        if radius is not None:
            overrides["target_radius"] = radius
        if spacing is not None:
            overrides["min_target_spacing"] = spacing
        if dwell is not None:
            overrides["dwell"] = dwell
        if width is not None or height is not None:
            overrides["screen"] = replace(
                default_task.screen,
                **{k: v for k, v in (("width", width), ("height", height)) if v is not None},
            )
        try:
            cfg = replace(default_task, **overrides)
            return targets_payload(cfg, trial_index)
        except ValueError as exc:
            return _error(422, str(exc))

    @app.post("/api/sessions")
    def post_sessions(payload: Any = Body(...)):
        objs = payload if isinstance(payload, list) else [payload]
        if not objs:
            return _error(422, "payload must contain at least one trial record")
        try:
            sessions = collate_sessions(
                (f"trial[{i}]", obj) for i, obj in enumerate(objs)
            )
        except SchemaError as exc:
            return _error(422, str(exc))
        if len(sessions) != 1:
            return _error(422, "payload must contain exactly one session")
        session = sessions[0]
        if session.source != "live":
            return _error(422, f"intake accepts source=live only, got {session.source!r}")

        lines = "".join(dump_line(obj) + "\n" for obj in objs)
        with lock:
            if session.session_id in seen_ids:
                return JSONResponse(
                    status_code=200,
                    content={
                        "persisted": False,
                        "session_id": session.session_id,
                        "reason": "duplicate session_id",
                    },
                )
            try:
                with open(sessions_path, "a", encoding="utf-8", newline="\n") as fh:
                    fh.write(lines)
            except OSError as exc:
                return _error(500, f"storage failure: {exc}")
            seen_ids.add(session.session_id)
        return JSONResponse(
            status_code=201,
            content={
                "persisted": True,
                "session_id": session.session_id,
                "trials": len(session.trials),
            },
        )

    @app.get("/api/report")
    def report():
        with lock:
            sessions = read_sessions(sessions_path) if sessions_path.exists() else []
        counts = {}
        sources = {"simulated": 0, "live": 0}
        for s in sessions:
            entry = counts.setdefault(s.group, {"sessions": 0, "trials": 0})
            entry["sessions"] += 1
            entry["trials"] += len(s.trials)
            sources[s.source] += len(s.trials)
        try:
            body = report_to_dict(analyze(sessions))
        except ValueError:
            body = None  # nothing analyzable yet; counts are still useful
        return {"counts": counts, "sources": sources, "report": body}

    return app


def intake_service(port: int, data_dir: str | Path, task: TaskConfig | None = None) -> None:
    """Run the intake app until interrupted (blocking)."""
    import uvicorn

    uvicorn.run(create_app(data_dir, task), host="127.0.0.1", port=port, log_level="warning")
