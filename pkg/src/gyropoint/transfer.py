"""Orientation-to-cursor transfer function and the screen-space cursor.

Rate control: wrist deflection beyond a per-axis dead zone commands cursor
velocity. The dead zone is subtractive, v = sign(d) * sensitivity *
(|d| - threshold), so velocity is continuous at the boundary instead of
jumping. Positive yaw deflection moves the cursor right; positive pitch
deflection moves it up, i.e. decreases screen y.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .sensing import (
    CalibrationState,
    FilterParams,
    ImuSample,
    Orientation,
    estimate_orientation,
)

__all__ = [
    "TransferParams",
    "Screen",
    "CursorState",
    "ResetPolicy",
    "PRESETS",
    "preset",
    "cursor_velocity",
    "step_cursor",
    "run_pipeline",
]


@dataclass(frozen=True)
class TransferParams:
    """Sensitivity (px/s per degree beyond threshold), per-axis dead zones
    (degrees), and a per-axis speed clamp (px/s)."""

    sensitivity: float
    threshold_x: float
    threshold_y: float
    max_speed: float
    preset_name: str = "custom"

    def __post_init__(self) -> None:
        if self.sensitivity <= 0:
            raise ValueError(f"sensitivity must be positive, got {self.sensitivity}")
        if self.threshold_x < 0 or self.threshold_y < 0:
            raise ValueError("thresholds must be non-negative")
        if self.max_speed <= 0:
            raise ValueError(f"max_speed must be positive, got {self.max_speed}")


@dataclass(frozen=True)
class Screen:
    width: int = 1920
    height: int = 1080

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("screen dimensions must be at least 1 pixel")


@dataclass(frozen=True)
class CursorState:
    """Cursor position in pixels at time t. Kept in-bounds by step_cursor."""

    x: float
    y: float
    t: float = 0.0


@dataclass(frozen=True)
class ResetPolicy:
    """Re-capture the zero orientation every `period` seconds when enabled.

    Cheap stand-in for full recalibration: yaw has no absolute reference, so
    periodically re-zeroing is what keeps a drifting device usable.
    """

    period: float = 120.0
    enabled: bool = True

    def __post_init__(self) -> None:
        if self.period <= 0:
            raise ValueError(f"reset period must be positive, got {self.period}")


PRESETS: dict[str, TransferParams] = {
    # low sensitivity, wide dead zone
    "iteration1": TransferParams(20.0, 8.0, 8.0, 1500.0, preset_name="iteration1"),
    # high sensitivity, narrow dead zone
    "iteration2": TransferParams(60.0, 2.0, 2.0, 1500.0, preset_name="iteration2"),
}


def preset(name: str) -> TransferParams:
    """Look up a named device tuning."""
    try:
        return PRESETS[name]
    except KeyError:
        valid = ", ".join(sorted(PRESETS))
        raise ValueError(f"unknown preset {name!r}; valid presets: {valid}") from None


def axis_velocity(deflection: float, threshold: float, sensitivity: float, max_speed: float) -> float:
    """Single-axis transfer: subtractive dead zone, then clamp."""
    mag = abs(deflection) - threshold
    if mag <= 0.0:
        return 0.0
    return math.copysign(min(sensitivity * mag, max_speed), deflection)


def cursor_velocity(
    o: Orientation, zero: Orientation, p: TransferParams
) -> tuple[float, float]:
    """Screen-space cursor velocity (px/s) for orientation `o` against the
    zero reference.

    Returns (vx, vy) ready for step_cursor: vy is negative for positive
    pitch deflection because screen y grows downward.
    """
    dx = o.yaw - zero.yaw
    dy = o.pitch - zero.pitch
    vx = axis_velocity(dx, p.threshold_x, p.sensitivity, p.max_speed)
    vy = -axis_velocity(dy, p.threshold_y, p.sensitivity, p.max_speed)
    return vx, vy


def step_cursor(
    c: CursorState, v: tuple[float, float], dt: float, s: Screen
) -> CursorState:
    """Integrate velocity over dt, clamping to the screen."""
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if not (math.isfinite(v[0]) and math.isfinite(v[1])):
        raise ValueError(f"non-finite velocity {v}")
    return CursorState(
        x=min(max(c.x + v[0] * dt, 0.0), float(s.width - 1)),
        y=min(max(c.y + v[1] * dt, 0.0), float(s.height - 1)),
        t=c.t + dt,
    )


def run_pipeline(
    samples: Sequence[ImuSample],
    cal: CalibrationState | None,
    fp: FilterParams,
    p: TransferParams,
    s: Screen,
    rp: ResetPolicy = ResetPolicy(),
    start: CursorState | None = None,
) -> list[CursorState]:
    """Drive the cursor from a raw sample stream.

    Orientation is estimated once over the whole stream, then integrated
    into cursor motion per sample interval. The zero reference starts at the
    first orientation; whenever elapsed time crosses a multiple of the reset
    period (and resets are enabled), the reference is re-captured from the
    current orientation, which kills accumulated drift at that instant.
    """
    orientations = estimate_orientation(samples, cal=cal, fp=fp)
    if not orientations:
        return []
    if start is None:
        start = CursorState(x=(s.width - 1) / 2.0, y=(s.height - 1) / 2.0, t=orientations[0].t)
    zero = orientations[0]
    t0 = orientations[0].t
    cursor = start
    out = [cursor]
    period_idx = 0
    for prev, cur in zip(orientations, orientations[1:]):
        if rp.enabled:
            k = int(math.floor((cur.t - t0) / rp.period + 1e-12))
            if k > period_idx:
                period_idx = k
                zero = cur
        v = cursor_velocity(cur, zero, p)
        cursor = step_cursor(cursor, v, cur.t - prev.t, s)
        out.append(cursor)
    return out
