"""Six-axis IMU streams and orientation estimation.

Accelerometer channels are in g-units, gyro channels in degrees/second,
matching common MEMS board conventions. Orientation fusion is a
complementary filter: pitch and roll blend gyro integration against
accelerometer tilt, yaw integrates the gyro alone. Without a magnetometer
there is nothing to anchor yaw, so any gyro bias walks it off linearly;
that failure mode is deliberate and the calibration/reset machinery exists
to manage it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

__all__ = [
    "ImuSample",
    "Orientation",
    "CalibrationState",
    "DriftParams",
    "FilterParams",
    "AnglePlan",
    "synth_imu_stream",
    "serialize_serial_log",
    "parse_serial_log",
    "calibrate",
    "estimate_orientation",
]

SERIAL_LOG_HEADER = "t,ax,ay,az,gx,gy,gz"

Vec3 = tuple[float, float, float]


def _wrap_angle(a: float) -> float:
    """Wrap to (-180, 180]."""
    a = math.fmod(a, 360.0)
    if a > 180.0:
        a -= 360.0
    elif a <= -180.0:
        a += 360.0
    return a


@dataclass(frozen=True)
class ImuSample:
    """One timestamped six-axis reading: accel (g), gyro (deg/s)."""

    t: float
    accel: Vec3
    gyro: Vec3

    def __post_init__(self) -> None:
        if not (math.isfinite(self.t) and self.t >= 0.0):
            raise ValueError(f"timestamp must be finite and non-negative, got {self.t}")
        if len(self.accel) != 3 or len(self.gyro) != 3:
            raise ValueError("accel and gyro must be 3-vectors")
        for v in (*self.accel, *self.gyro):
            if not math.isfinite(v):
                raise ValueError(f"non-finite channel value at t={self.t}")


@dataclass(frozen=True)
class Orientation:
    """Yaw/pitch/roll in degrees at a timestamp.

    Yaw and roll are normalized to (-180, 180]; pitch lives in [-90, 90]
    (beyond that the tilt decomposition is ambiguous anyway).
    """

    t: float
    yaw: float
    pitch: float
    roll: float

    def __post_init__(self) -> None:
        for name, v in (("yaw", self.yaw), ("pitch", self.pitch), ("roll", self.roll)):
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
        if not -90.0 <= self.pitch <= 90.0:
            raise ValueError(f"pitch out of [-90, 90]: {self.pitch}")
        for name, v in (("yaw", self.yaw), ("roll", self.roll)):
            if not -180.0 < v <= 180.0:
                raise ValueError(f"{name} out of (-180, 180]: {v}")


@dataclass(frozen=True)
class CalibrationState:
    """Per-channel biases estimated from a stationary buffer."""

    gyro_bias: Vec3
    accel_bias: Vec3
    buffer_len: int

    def __post_init__(self) -> None:
        if self.buffer_len < 1:
            raise ValueError("buffer_len must be at least 1")
        for v in (*self.gyro_bias, *self.accel_bias):
            if not math.isfinite(v):
                raise ValueError("bias values must be finite")


@dataclass(frozen=True)
class DriftParams:
    """Sensor imperfection model.

    gyro_bias_walk_sigma is the random-walk intensity (deg/s per sqrt(s)) of
    a gyro bias that switches on only after onset_time seconds of operation;
    before the onset the device is treated as stable. The white sigmas are
    per-sample measurement noise.
    """

    gyro_bias_walk_sigma: float = 0.0
    onset_time: float = 120.0
    white_noise_sigma_gyro: float = 0.0
    white_noise_sigma_accel: float = 0.0

    def __post_init__(self) -> None:
        if min(
            self.gyro_bias_walk_sigma,
            self.white_noise_sigma_gyro,
            self.white_noise_sigma_accel,
        ) < 0:
            raise ValueError("noise sigmas must be non-negative")
        if self.onset_time <= 0:
            raise ValueError("onset_time must be positive")


@dataclass(frozen=True)
class FilterParams:
    """Complementary-filter settings: alpha is the gyro-trust weight."""

    alpha: float = 0.98
    sample_rate: float = 100.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")


class AnglePlan:
    """Piecewise-linear yaw/pitch/roll trajectory for the signal generator.

    Waypoints are (t, yaw, pitch, roll) rows; evaluation interpolates each
    channel linearly, which makes planned angular rates exact constants
    between waypoints and keeps the synthetic gyro simple to reason about.
    """

    def __init__(self, waypoints: Sequence[tuple[float, float, float, float]]):
        if len(waypoints) == 0:
            raise ValueError("plan needs at least one waypoint")
        pts = sorted(waypoints)
        ts = [p[0] for p in pts]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("waypoint times must be strictly increasing")
        if ts[0] != 0.0:
            raise ValueError("plan must start at t=0")
        self._t = np.array(ts)
        self._angles = np.array([p[1:] for p in pts])

    @property
    def duration(self) -> float:
        return float(self._t[-1])

    def __call__(self, t: float) -> Vec3:
        yaw, pitch, roll = (
            float(np.interp(t, self._t, self._angles[:, i])) for i in range(3)
        )
        return yaw, pitch, roll

    @classmethod
    def static(
        cls, duration: float, yaw: float = 0.0, pitch: float = 0.0, roll: float = 0.0
    ) -> "AnglePlan":
        """Hold a fixed attitude for `duration` seconds."""
        if duration <= 0:
            raise ValueError("duration must be positive")
        return cls([(0.0, yaw, pitch, roll), (duration, yaw, pitch, roll)])

    @classmethod
    def ramp(
        cls,
        duration: float,
        yaw_rate: float = 0.0,
        pitch_rate: float = 0.0,
        roll_rate: float = 0.0,
    ) -> "AnglePlan":
        """Rotate at constant rates (deg/s) starting from zero attitude."""
        if duration <= 0:
            raise ValueError("duration must be positive")
        return cls(
            [
                (0.0, 0.0, 0.0, 0.0),
                (duration, yaw_rate * duration, pitch_rate * duration, roll_rate * duration),
            ]
        )


def _gravity_body(pitch_deg: float, roll_deg: float) -> Vec3:
    """Unit gravity vector seen in the body frame at the given tilt."""
    th = math.radians(pitch_deg)
    ph = math.radians(roll_deg)
    return (
        -math.sin(th),
        math.sin(ph) * math.cos(th),
        math.cos(ph) * math.cos(th),
    )


def synth_imu_stream(
    angle_plan: AnglePlan | Callable[[float], Vec3],
    drift: DriftParams = DriftParams(),
    sample_rate: float = 100.0,
    seed: int = 0,
    duration: float | None = None,
) -> list[ImuSample]:
    """Generate the six-axis stream a board following `angle_plan` would emit.

    Samples are uniformly spaced at 1/sample_rate from t=0 through the plan
    duration. Gyro channels carry the plan's finite-difference angular rates
    (channel order x=roll, y=pitch, z=yaw rate) plus white noise plus the
    post-onset bias walk; accel channels carry gravity rotated by the plan's
    pitch/roll plus white noise. Deterministic for a fixed seed.

    `duration` must be given when the plan is a bare callable.
    """
    if sample_rate <= 0:
        raise ValueError(f"sample_rate must be positive, got {sample_rate}")
    if duration is None:
        if not isinstance(angle_plan, AnglePlan):
            raise ValueError("duration is required for callable plans")
        duration = angle_plan.duration
    if duration <= 0:
        raise ValueError("plan duration must be positive")

    dt = 1.0 / sample_rate
    n = int(math.floor(duration * sample_rate + 1e-9)) + 1
    times = [k * dt for k in range(n)]
    angles = [angle_plan(t) for t in times]

    rng = np.random.default_rng(seed)
    sqrt_dt = math.sqrt(dt)
    bias = np.zeros(3)
    out: list[ImuSample] = []
    for k, t in enumerate(times):
        # backward difference, except the first sample which looks forward;
        # a linear ramp therefore reports its exact rate at every sample
        if n == 1:
            rate = (0.0, 0.0, 0.0)
        elif k == 0:
            a0, a1 = angles[0], angles[1]
            rate = tuple((b - a) * sample_rate for a, b in zip(a0, a1))
        else:
            a0, a1 = angles[k - 1], angles[k]
            rate = tuple((b - a) * sample_rate for a, b in zip(a0, a1))
        yaw_rate, pitch_rate, roll_rate = rate

        if drift.gyro_bias_walk_sigma > 0.0 and t > drift.onset_time:
            bias = bias + drift.gyro_bias_walk_sigma * sqrt_dt * rng.standard_normal(3)
        if drift.white_noise_sigma_gyro > 0.0:
            gn = drift.white_noise_sigma_gyro * rng.standard_normal(3)
        else:
            gn = np.zeros(3)
        if drift.white_noise_sigma_accel > 0.0:
            an = drift.white_noise_sigma_accel * rng.standard_normal(3)
        else:
            an = np.zeros(3)

        _yaw, pitch, roll = angles[k]
        gx, gy, gz = _gravity_body(pitch, roll)
        out.append(
            ImuSample(
                t=t,
                accel=(gx + an[0], gy + an[1], gz + an[2]),
                gyro=(
                    roll_rate + bias[0] + gn[0],
                    pitch_rate + bias[1] + gn[1],
                    yaw_rate + bias[2] + gn[2],
                ),
            )
        )
    return out


def serialize_serial_log(samples: Iterable[ImuSample]) -> str:
    """Render samples in the line format device captures use.

    Header `t,ax,ay,az,gx,gy,gz`, one record per line, LF endings, t with
    six decimal places, channels with nine (sub-nano residuals are far below
    any sensor's noise floor, so the format is lossless in practice).
    """
    lines = [SERIAL_LOG_HEADER]
    for s in samples:
        lines.append(
            f"{s.t:.6f},"
            f"{s.accel[0]:.9f},{s.accel[1]:.9f},{s.accel[2]:.9f},"
            f"{s.gyro[0]:.9f},{s.gyro[1]:.9f},{s.gyro[2]:.9f}"
        )
    return "\n".join(lines) + "\n"


def parse_serial_log(text: str) -> list[ImuSample]:
    """Parse a serial capture into samples.

    Expects the exact header line, then one comma-separated record per line.
    Errors carry the 1-based line number of the offending input.
    """
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise ValueError("empty serial log")
    if lines[0].strip() != SERIAL_LOG_HEADER:
        raise ValueError(f"line 1: expected header {SERIAL_LOG_HEADER!r}")
    out: list[ImuSample] = []
    prev_t = -math.inf
    for idx, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue  # tolerate trailing blank lines
        fields = raw.split(",")
        if len(fields) != 7:
            raise ValueError(f"line {idx}: expected 7 fields, got {len(fields)}")
        try:
            vals = [float(f) for f in fields]
        except ValueError as exc:
            raise ValueError(f"line {idx}: {exc}") from None
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"line {idx}: non-finite value")
        if vals[0] <= prev_t:
            raise ValueError(f"line {idx}: non-monotone timestamp {vals[0]}")
        prev_t = vals[0]
        out.append(
            ImuSample(t=vals[0], accel=(vals[1], vals[2], vals[3]), gyro=(vals[4], vals[5], vals[6]))
        )
    if not out:
        raise ValueError("serial log contains no data lines")
    return out


def calibrate(samples: Sequence[ImuSample], buffer_len: int = 100) -> CalibrationState:
    """Estimate channel biases from the first `buffer_len` stationary samples.

    Gyro bias is the plain per-channel mean; accel bias is the mean minus the
    (0, 0, 1) g gravity reference, since a stationary flat board should read
    exactly one g on z.
    """
    if buffer_len < 1:
        raise ValueError("buffer_len must be at least 1")
    if len(samples) < buffer_len:
        raise ValueError(
            f"calibration needs {buffer_len} samples, got {len(samples)}"
        )
    window = samples[:buffer_len]
    gyro = tuple(
        math.fsum(s.gyro[i] for s in window) / buffer_len for i in range(3)
    )
    accel = tuple(
        math.fsum(s.accel[i] for s in window) / buffer_len for i in range(3)
    )
    return CalibrationState(
        gyro_bias=gyro,  # type: ignore[arg-type]
        accel_bias=(accel[0], accel[1], accel[2] - 1.0),
        buffer_len=buffer_len,
    )


def _accel_tilt(ax: float, ay: float, az: float) -> tuple[float, float]:
    """Pitch and roll implied by a gravity-only accel reading, degrees."""
    pitch = math.degrees(math.atan2(-ax, math.hypot(ay, az)))
    roll = math.degrees(math.atan2(ay, az))
    return pitch, roll


def estimate_orientation(
    samples: Sequence[ImuSample],
    cal: CalibrationState | None = None,
    fp: FilterParams = FilterParams(),
) -> list[Orientation]:
    """Fuse a sample stream into yaw/pitch/roll.

    Pitch and roll blend the gyro-integrated estimate (weight alpha) with
    accelerometer tilt (weight 1-alpha) every step. Yaw has no absolute
    reference and integrates the gyro alone. Pass `cal` to remove measured
    biases first; omit it to watch uncorrected drift.

    Timestamps mirror the input. Internally yaw and roll accumulate without
    wrapping (the filter state must not jump at +-180) and are normalized
    only on output; pitch is clamped into [-90, 90], where the tilt formula
    pins it anyway when accel participates.
    """
    if not samples:
        return []
    gb = cal.gyro_bias if cal is not None else (0.0, 0.0, 0.0)
    ab = cal.accel_bias if cal is not None else (0.0, 0.0, 0.0)
    alpha = fp.alpha

    def corrected(s: ImuSample) -> tuple[Vec3, Vec3]:
        return (
            (s.accel[0] - ab[0], s.accel[1] - ab[1], s.accel[2] - ab[2]),
            (s.gyro[0] - gb[0], s.gyro[1] - gb[1], s.gyro[2] - gb[2]),
        )

    accel0, _ = corrected(samples[0])
    tilt_pitch, tilt_roll = _accel_tilt(*accel0)
    yaw = 0.0
    pitch = (1.0 - alpha) * tilt_pitch
    roll = (1.0 - alpha) * tilt_roll

    def emit(t: float) -> Orientation:
        return Orientation(
            t=t,
            yaw=_wrap_angle(yaw),
            pitch=max(-90.0, min(90.0, pitch)),
            roll=_wrap_angle(roll),
        )

    out = [emit(samples[0].t)]
    for prev, cur in zip(samples, samples[1:]):
        dt = cur.t - prev.t
        if dt <= 0:
            raise ValueError(f"non-increasing timestamps at t={cur.t}")
        accel, gyro = corrected(cur)
        yaw += gyro[2] * dt
        gyro_pitch = pitch + gyro[1] * dt
        gyro_roll = roll + gyro[0] * dt
        tilt_pitch, tilt_roll = _accel_tilt(*accel)
        pitch = alpha * gyro_pitch + (1.0 - alpha) * tilt_pitch
        roll = alpha * gyro_roll + (1.0 - alpha) * tilt_roll
        out.append(emit(cur.t))
    return out
