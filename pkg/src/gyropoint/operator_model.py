"""Simulated human operator closing the pointing loop.

The operator watches the cursor with visual latency, commands wrist
rotation rates proportional to the (delayed) pixel error, and realizes
those commands through a proprioceptive inner loop: the commanded rate is
treated as a desired cursor velocity, the operator feels the actual wrist
deflection and knows the device's response to it, and slews the wrist to
close the gap. Proprioception is effectively instantaneous compared to
vision, which is what keeps the high-gain devices stable; damping on the
visually perceived velocity instead would oscillate at these latencies.

Movement times then emerge from device properties alone: a wide dead zone
costs wrist travel on every approach and every direction reversal, a low
sensitivity costs more deflection per pixel of speed, and the speed clamp
caps the transport phase.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .transfer import CursorState, Screen, TransferParams, axis_velocity

__all__ = [
    "OperatorParams",
    "MinJerkSegment",
    "PipelineContext",
    "Acquisition",
    "min_jerk",
    "steer",
    "acquire_target",
]


@dataclass(frozen=True)
class OperatorParams:
    """Human motor-control parameters.

    reaction_delay   visual feedback latency, seconds
    steer_gain       commanded deg/s of wrist rate per pixel of error
    max_rate         wrist rotation speed cap, deg/s
    tremor_sigma     white motor noise added to each commanded rate, deg/s
    seed             default noise stream when no generator is supplied
    speed_scale      px/s of intended cursor speed per deg/s commanded
    track_gain       proprioceptive tracking bandwidth, 1/s
    max_deflection   anatomical wrist deflection limit, degrees
    """

    reaction_delay: float = 0.2
    steer_gain: float = 0.15
    max_rate: float = 45.0
    tremor_sigma: float = 1.5
    seed: int = 0
    speed_scale: float = 16.0
    track_gain: float = 10.0
    max_deflection: float = 75.0

    def __post_init__(self) -> None:
        if self.reaction_delay < 0:
            raise ValueError("reaction_delay must be non-negative")
        if self.steer_gain <= 0:
            raise ValueError("steer_gain must be positive")
        if self.max_rate <= 0:
            raise ValueError("max_rate must be positive")
        if self.tremor_sigma < 0:
            raise ValueError("tremor_sigma must be non-negative")
        if self.speed_scale <= 0 or self.track_gain <= 0 or self.max_deflection <= 0:
            raise ValueError("motor model parameters must be positive")


@dataclass(frozen=True)
class MinJerkSegment:
    """Smooth point-to-point angle move: still at both ends."""

    start_value: float
    end_value: float
    duration: float

    def __post_init__(self) -> None:
        if self.duration <= 0:
            raise ValueError(f"duration must be positive, got {self.duration}")


def min_jerk(seg: MinJerkSegment, t: float) -> float:
    """Minimum-jerk interpolation at time t within the segment.

    x(t) = x0 + (xf - x0) * (10 tau^3 - 15 tau^4 + 6 tau^5); velocity and
    acceleration vanish at both endpoints.
    """
    if not 0.0 <= t <= seg.duration:
        raise ValueError(f"t={t} outside [0, {seg.duration}]")
    tau = t / seg.duration
    shape = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau))
    return seg.start_value + (seg.end_value - seg.start_value) * shape


def _delayed_position(
    history: Sequence[CursorState], query_t: float, fallback: CursorState
) -> tuple[float, float]:
    """Cursor position at query_t: latest history entry not newer than it.

    Times before the first entry return the first (start) position; an empty
    history falls back to the live cursor.
    """
    if not history:
        return fallback.x, fallback.y
    # slack absorbs float jitter in elapsed - delay when both are multiples
    # of the sample period
    idx = bisect_right(history, query_t + 1e-9, key=lambda c: c.t) - 1
    entry = history[max(idx, 0)]
    return entry.x, entry.y


def steer(
    operator: OperatorParams,
    cursor: CursorState,
    target: tuple[float, float],
    elapsed: float,
    history: Sequence[CursorState],
    rng: np.random.Generator | None = None,
) -> tuple[float, float]:
    """Commanded wrist rates (yaw_rate, pitch_rate) in deg/s.

    Proportional pursuit on the error the operator currently sees, i.e. the
    cursor position reaction_delay ago, clamped to max_rate per axis, plus
    Gaussian tremor. Positive pitch rate means "move the cursor up". With no
    generator supplied the tremor stream is derived from operator.seed, so
    the function stays a pure function of its arguments.
    """
    px, py = _delayed_position(history, elapsed - operator.reaction_delay, cursor)
    err_x = target[0] - px
    err_y = py - target[1]  # screen y grows downward; positive means "go up"
    g, cap = operator.steer_gain, operator.max_rate
    yaw_rate = min(max(g * err_x, -cap), cap)
    pitch_rate = min(max(g * err_y, -cap), cap)
    if operator.tremor_sigma > 0.0:
        if rng is None:
            rng = np.random.default_rng(operator.seed)
        noise = operator.tremor_sigma * rng.standard_normal(2)
        yaw_rate += noise[0]
        pitch_rate += noise[1]
    return yaw_rate, pitch_rate


@dataclass(frozen=True)
class PipelineContext:
    """Device-side context an acquisition runs against."""

    transfer: TransferParams
    screen: Screen
    sample_rate: float = 100.0
    start: CursorState | None = None

    def __post_init__(self) -> None:
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")


@dataclass(frozen=True)
class Acquisition:
    """Outcome of one target acquisition."""

    movement_time: float
    timed_out: bool
    path: tuple[CursorState, ...]


def acquire_target(
    operator: OperatorParams,
    ctx: PipelineContext,
    target: tuple[float, float],
    target_radius: float = 24.0,
    dwell: float = 0.5,
    timeout: float = 60.0,
    rng: np.random.Generator | None = None,
) -> Acquisition:
    """Steer the cursor until it dwells inside the target, or time out.

    Runs the steer -> wrist -> transfer -> cursor loop at ctx.sample_rate.
    The clock starts when the target is presented; movement_time includes
    the dwell. A timeout reports movement_time = timeout with the partial
    path, it never raises.
    """
    if timeout <= dwell:
        raise ValueError(f"timeout {timeout} must exceed dwell {dwell}")
    scr = ctx.screen
    if not (0.0 <= target[0] <= scr.width - 1 and 0.0 <= target[1] <= scr.height - 1):
        raise ValueError(f"target {target} outside {scr.width}x{scr.height} screen")
    p = ctx.transfer
    if rng is None and operator.tremor_sigma > 0.0:
        rng = np.random.default_rng(operator.seed)

    dt = 1.0 / ctx.sample_rate
    cursor = ctx.start or CursorState(
        x=(scr.width - 1) / 2.0, y=(scr.height - 1) / 2.0, t=0.0
    )
    cursor = CursorState(cursor.x, cursor.y, 0.0)  # clock is per-acquisition
    # wrist state: yaw/pitch deflections from the calibrated zero, degrees
    wrist_x = 0.0
    wrist_y = 0.0
    path = [cursor]
    dwell_acc = 0.0
    max_ticks = int(round(timeout * ctx.sample_rate))
    r2 = target_radius * target_radius

    for k in range(1, max_ticks + 1):
        t = k * dt
        cmd_yaw, cmd_pitch = steer(operator, cursor, target, t, path, rng)

        # proprioceptive realization: intended cursor velocity per the
        # command, felt velocity from the known device response, wrist slews
        # to close the gap (up-positive convention on the pitch axis)
        want_vx = operator.speed_scale * cmd_yaw
        want_vy = operator.speed_scale * cmd_pitch
        felt_vx = axis_velocity(wrist_x, p.threshold_x, p.sensitivity, p.max_speed)
        felt_vy = axis_velocity(wrist_y, p.threshold_y, p.sensitivity, p.max_speed)
        rate_cap = operator.max_rate
        slew_x = operator.track_gain * (want_vx - felt_vx) / p.sensitivity
        slew_y = operator.track_gain * (want_vy - felt_vy) / p.sensitivity
        slew_x = min(max(slew_x, -rate_cap), rate_cap)
        slew_y = min(max(slew_y, -rate_cap), rate_cap)
        lim = operator.max_deflection
        wrist_x = min(max(wrist_x + slew_x * dt, -lim), lim)
        wrist_y = min(max(wrist_y + slew_y * dt, -lim), lim)

        vx = axis_velocity(wrist_x, p.threshold_x, p.sensitivity, p.max_speed)
        vy = -axis_velocity(wrist_y, p.threshold_y, p.sensitivity, p.max_speed)
        cursor = CursorState(
            x=min(max(cursor.x + vx * dt, 0.0), float(scr.width - 1)),
            y=min(max(cursor.y + vy * dt, 0.0), float(scr.height - 1)),
            t=t,
        )
        path.append(cursor)

        ddx = cursor.x - target[0]
        ddy = cursor.y - target[1]
        if ddx * ddx + ddy * ddy <= r2:
            dwell_acc += dt
            if dwell_acc >= dwell - 1e-9:
                return Acquisition(movement_time=t, timed_out=False, path=tuple(path))
        else:
            dwell_acc = 0.0

    return Acquisition(movement_time=timeout, timed_out=True, path=tuple(path))
