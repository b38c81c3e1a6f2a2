"""Session persistence: one JSON object per line, one line per trial.

Line schema (version 1):

    {"schema_version": 1, "session_id": "...", "group": "control",
     "source": "simulated", "participant_id": 0, "trial_index": 1,
     "targets": [{"x_px": ..., "y_px": ..., "radius_px": ...,
                  "movement_time_s": ..., "timeout": false}, ...],
     "path": [{"t_s": ..., "x_px": ..., "y_px": ...}, ...],   # optional
     "config": {... task snapshot ...}}

Lines are written in canonical form (sorted keys, no whitespace) so a fixed
simulation is byte-identical run to run and files diff cleanly. Optional
"path" traces are validated on read but not retained on the in-memory
records, which carry per-target timing only; the raw line keeps them.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Iterable, Iterator, Sequence

from ..task import GROUPS, SessionRecord, TargetResult, TaskConfig, TrialRecord
from ..transfer import Screen

SCHEMA_VERSION = 1

_SOURCES = ("simulated", "live")

_LINE_KEYS = {
    "schema_version",
    "session_id",
    "group",
    "source",
    "participant_id",
    "trial_index",
    "targets",
    "path",
    "config",
}

_TARGET_KEYS = {"x_px", "y_px", "radius_px", "movement_time_s", "timeout"}
_PATH_KEYS = {"t_s", "x_px", "y_px"}

_CONFIG_KEYS = {
    "screen",
    "targets_per_trial",
    "trials_per_participant",
    "target_radius",
    "dwell",
    "min_target_spacing",
    "seed",
    "timeout",
    "sample_rate",
}


class SchemaError(ValueError):
    """A JSONL line or intake payload violates the session schema."""


def config_snapshot(cfg: TaskConfig) -> dict:
    return {
        "screen": {"width": cfg.screen.width, "height": cfg.screen.height},
        "targets_per_trial": cfg.targets_per_trial,
        "trials_per_participant": cfg.trials_per_participant,
        "target_radius": cfg.target_radius,
        "dwell": cfg.dwell,
        "min_target_spacing": cfg.min_target_spacing,
        "seed": cfg.seed,
        "timeout": cfg.timeout,
        "sample_rate": cfg.sample_rate,
    }


def trial_objs(session: SessionRecord) -> list[dict]:
    """The session's trials as schema-shaped plain dicts, one per line."""
    cfg = config_snapshot(session.config)
    return [
        {
            "schema_version": SCHEMA_VERSION,
            "session_id": session.session_id,
            "group": session.group,
            "source": session.source,
            "participant_id": session.participant_id,
            "trial_index": trial.trial_index,
            "targets": [
                {
                    "x_px": t.x,
                    "y_px": t.y,
                    "radius_px": session.config.target_radius,
                    "movement_time_s": t.movement_time,
                    "timeout": t.timed_out,
                }
                for t in trial.targets
            ],
            "config": cfg,
        }
        for trial in session.trials
    ]


def dump_line(obj: dict) -> str:
    """Canonical single-line rendering; the only writer this module uses."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def sessions_to_jsonl(sessions: Sequence[SessionRecord]) -> str:
    lines = [dump_line(obj) for s in sessions for obj in trial_objs(s)]
    return "".join(line + "\n" for line in lines)


def write_sessions(
    sessions: Sequence[SessionRecord], path: str | Path, append: bool = False
) -> Path:
    """Write (or append) one line per trial; returns the path written."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "a" if append else "w", encoding="utf-8", newline="\n") as fh:
        fh.write(sessions_to_jsonl(sessions))
    return path


def _expect(cond: bool, where: str, msg: str) -> None:
    if not cond:
        raise SchemaError(f"{where}: {msg}")


def _number(obj: dict, key: str, where: str) -> float:
    value = obj.get(key)
    _expect(
        isinstance(value, (int, float)) and not isinstance(value, bool),
        where,
        f"{key} must be a number, got {value!r}",
    )
    value = float(value)
    _expect(math.isfinite(value), where, f"{key} must be finite, got {value!r}")
    return value


def _integer(obj: dict, key: str, where: str) -> int:
    value = obj.get(key)
    _expect(
        isinstance(value, int) and not isinstance(value, bool),
        where,
        f"{key} must be an integer, got {value!r}",
    )
    return value


def _parse_config(node: Any, where: str) -> TaskConfig:
    _expect(isinstance(node, dict), where, "config must be an object")
    _expect(not set(node) - _CONFIG_KEYS, where, f"unknown config key(s) {sorted(set(node) - _CONFIG_KEYS)}")
    missing = sorted(_CONFIG_KEYS - set(node))
    _expect(not missing, where, f"missing config key(s) {missing}")
    screen = node["screen"]
    _expect(
        isinstance(screen, dict) and set(screen) == {"width", "height"},
        where,
        "config.screen must be {width, height}",
    )
    try:
        return TaskConfig(
            screen=Screen(
                width=_integer(screen, "width", where), height=_integer(screen, "height", where)
            ),
            targets_per_trial=_integer(node, "targets_per_trial", where),
            trials_per_participant=_integer(node, "trials_per_participant", where),
            target_radius=_number(node, "target_radius", where),
            dwell=_number(node, "dwell", where),
            min_target_spacing=_number(node, "min_target_spacing", where),
            seed=_integer(node, "seed", where),
            timeout=_number(node, "timeout", where),
            sample_rate=_number(node, "sample_rate", where),
        )
    except ValueError as exc:
        raise SchemaError(f"{where}: invalid config: {exc}") from None


def validate_trial_obj(obj: Any, where: str = "payload") -> dict:
    """Check one line-shaped object against the schema; returns it unchanged.

    Raises SchemaError naming `where` and the offending field. Validation
    covers structure and value ranges, not cross-line consistency.
    """
    _expect(isinstance(obj, dict), where, "each record must be a JSON object")
    unknown = sorted(set(obj) - _LINE_KEYS)
    _expect(not unknown, where, f"unknown key(s) {unknown}")
    missing = sorted(_LINE_KEYS - {"path"} - set(obj))
    _expect(not missing, where, f"missing key(s) {missing}")

    version = _integer(obj, "schema_version", where)
    _expect(version == SCHEMA_VERSION, where, f"unknown schema_version {version}")
    _expect(
        isinstance(obj["session_id"], str) and obj["session_id"],
        where,
        "session_id must be a non-empty string",
    )
    _expect(obj["group"] in GROUPS, where, f"group must be one of {GROUPS}, got {obj['group']!r}")
    _expect(
        obj["source"] in _SOURCES,
        where,
        f"source must be one of {_SOURCES}, got {obj['source']!r}",
    )
    _expect(_integer(obj, "participant_id", where) >= 0, where, "participant_id must be >= 0")
    _expect(_integer(obj, "trial_index", where) >= 1, where, "trial_index starts at 1")

    targets = obj["targets"]
    _expect(
        isinstance(targets, list) and targets, where, "targets must be a non-empty array"
    )
    for i, t in enumerate(targets):
        tw = f"{where}: targets[{i}]"
        _expect(isinstance(t, dict), tw, "must be an object")
        _expect(set(t) == _TARGET_KEYS, tw, f"keys must be {sorted(_TARGET_KEYS)}")
        _number(t, "x_px", tw)
        _number(t, "y_px", tw)
        _expect(_number(t, "radius_px", tw) >= 1, tw, "radius_px must be at least 1")
        _expect(_number(t, "movement_time_s", tw) >= 0, tw, "movement_time_s must be >= 0")
        _expect(isinstance(t["timeout"], bool), tw, "timeout must be a boolean")

    if "path" in obj:
        path = obj["path"]
        _expect(isinstance(path, list), where, "path must be an array")
        prev_t = -math.inf
        for i, p in enumerate(path):
            pw = f"{where}: path[{i}]"
            _expect(isinstance(p, dict), pw, "must be an object")
            _expect(set(p) == _PATH_KEYS, pw, f"keys must be {sorted(_PATH_KEYS)}")
            t_s = _number(p, "t_s", pw)
            _number(p, "x_px", pw)
            _number(p, "y_px", pw)
            _expect(t_s >= prev_t, pw, "t_s must be non-decreasing")
            prev_t = t_s

    _parse_config(obj["config"], where)
    return obj


def _trial_from_obj(obj: dict, where: str) -> TrialRecord:
    results = tuple(
        TargetResult(
            x=float(t["x_px"]),
            y=float(t["y_px"]),
            movement_time=float(t["movement_time_s"]),
            timed_out=t["timeout"],
        )
        for t in obj["targets"]
    )
    try:
        return TrialRecord(
            participant_id=obj["participant_id"],
            trial_index=obj["trial_index"],
            targets=results,
            trial_total=math.fsum(r.movement_time for r in results),
        )
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def collate_sessions(objs: Iterable[tuple[str, dict]]) -> list[SessionRecord]:
    """Group validated line objects into SessionRecords.

    Takes (where, obj) pairs so errors can point at their source line. Lines
    of one session may interleave with other sessions, but its group, source,
    participant and config snapshot must agree line to line, and a trial
    index may appear only once per session.
    """
    order: list[str] = []
    meta: dict[str, tuple] = {}
    trials: dict[str, dict[int, TrialRecord]] = {}
    for where, obj in objs:
        validate_trial_obj(obj, where)
        sid = obj["session_id"]
        cfg = _parse_config(obj["config"], where)
        key = (obj["group"], obj["source"], obj["participant_id"], cfg)
        if sid not in meta:
            order.append(sid)
            meta[sid] = key
            trials[sid] = {}
        elif meta[sid] != key:
            raise SchemaError(
                f"{where}: session {sid!r} changed group/source/participant/config mid-file"
            )
        idx = obj["trial_index"]
        if idx in trials[sid]:
            raise SchemaError(f"{where}: duplicate trial_index {idx} for session {sid!r}")
        trials[sid][idx] = _trial_from_obj(obj, where)
    out = []
    for sid in order:
        group, source, pid, cfg = meta[sid]
        ordered = tuple(trials[sid][i] for i in sorted(trials[sid]))
        out.append(
            SessionRecord(
                session_id=sid,
                group=group,
                source=source,
                participant_id=pid,
                trials=ordered,
                config=cfg,
            )
        )
    return out


def _numbered_objs(text: str, label: str) -> Iterator[tuple[str, dict]]:
    for n, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue  # blank lines (trailing or otherwise) are not records
        where = f"{label} line {n}"
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{where}: invalid JSON: {exc.msg}") from None
        yield where, obj


def read_sessions(path: str | Path) -> list[SessionRecord]:
    """Parse a session JSONL file back into records (inverse of write_sessions)."""
    path = Path(path)
    return collate_sessions(_numbered_objs(path.read_text(encoding="utf-8"), path.name))


def merge_sessions(batches: Sequence[Sequence[SessionRecord]]) -> list[SessionRecord]:
    """Concatenate per-file record lists, rejecting session_id collisions."""
    seen: set[str] = set()
    out: list[SessionRecord] = []
    for batch in batches:
        for s in batch:
            if s.session_id in seen:
                raise SchemaError(f"duplicate session_id {s.session_id!r} across inputs")
            seen.add(s.session_id)
            out.append(s)
    return out
