#!/usr/bin/env python3
"""Sensing walkthrough: synth a six-axis stream, calibrate, fuse, drift.

Four short experiments on simulated board data:
  1. a turn-on gyro bias measured away by calibration (the happy path),
  2. the same stream with calibration skipped, to watch bias leak into yaw,
  3. a tilt hold with a post-calibration bias walk: accel pins pitch/roll
     while yaw wanders, which is the whole case for periodic re-zeroing,
  4. the re-zeroing policy paying off in cursor travel on a long stream.

Run:  python3 demos/01_orientation_and_drift.py
"""

import math

from gyropoint.sensing import (
    AnglePlan,
    DriftParams,
    FilterParams,
    ImuSample,
    calibrate,
    estimate_orientation,
    parse_serial_log,
    serialize_serial_log,
    synth_imu_stream,
)
from gyropoint.transfer import ResetPolicy, Screen, preset, run_pipeline

fp = FilterParams()  # alpha 0.98, 100 Hz


def with_turn_on_bias(samples, gz_bias):
    """Add a constant z-gyro offset, like a board that skipped warm-up."""
    return [
        ImuSample(t=s.t, accel=s.accel, gyro=(s.gyro[0], s.gyro[1], s.gyro[2] + gz_bias))
        for s in samples
    ]


def headline(text):
    print()
    print(text)
    print("-" * len(text))


headline("1. calibrated turn: 2 s flat lead-in, then 20 deg/s yaw for 5 s")
plan = AnglePlan([(0.0, 0.0, 0.0, 0.0), (2.0, 0.0, 0.0, 0.0), (7.0, 100.0, 0.0, 0.0)])
samples = with_turn_on_bias(synth_imu_stream(plan, seed=11), gz_bias=0.3)
cal = calibrate(samples, buffer_len=100)  # averages the first second
print(f"gyro bias estimate : {cal.gyro_bias}   (true z bias 0.3 deg/s)")

est = estimate_orientation(samples, cal=cal, fp=fp)
for t_mark in (2.0, 4.5, 7.0):
    o = est[int(t_mark * fp.sample_rate)]
    ideal = max(0.0, t_mark - 2.0) * 20.0
    print(f"t={t_mark:4.1f}s  yaw={o.yaw:8.3f} deg   (plan says {ideal:7.3f})")

headline("2. same stream, calibration skipped")
raw = estimate_orientation(samples, cal=None, fp=fp)
print("the 0.3 deg/s offset integrates straight into the yaw estimate:")
for t_mark in (2.0, 7.0):
    o = raw[int(t_mark * fp.sample_rate)]
    good = est[int(t_mark * fp.sample_rate)]
    print(
        f"t={t_mark:4.1f}s  uncalibrated yaw={o.yaw:7.3f}  calibrated {good.yaw:6.3f}"
        f"   (bias*t = {0.3 * t_mark:4.2f})"
    )

headline("3. 25 deg pitch hold while the bias walks after calibration")
# onset_time places the walk after the calibration window on purpose:
# calibration can only remove the bias it saw.
hold = AnglePlan([(0.0, 0.0, 0.0, 0.0), (2.0, 0.0, 0.0, 0.0), (3.0, 0.0, 25.0, 0.0), (60.0, 0.0, 25.0, 0.0)])
drift = DriftParams(gyro_bias_walk_sigma=0.4, onset_time=3.0)
wander = synth_imu_stream(hold, drift, seed=3)
est3 = estimate_orientation(wander, cal=calibrate(wander, buffer_len=100), fp=fp)
for t_mark in (10.0, 30.0, 60.0):
    o = est3[int(t_mark * fp.sample_rate)]
    print(f"t={t_mark:4.0f}s  pitch={o.pitch:7.3f} (true 25)  roll={o.roll:7.3f} (true 0)  yaw={o.yaw:8.3f} (true 0)")
print("gravity keeps correcting pitch and roll; yaw has no reference signal,")
print("so whatever bias develops after calibration lands there undisturbed.")

headline("4. periodic re-zeroing versus free drift over five minutes")
rate = 100.0
biased = [
    ImuSample(t=k / rate, accel=(0.0, 0.0, 1.0), gyro=(0.0, 0.0, 0.05))
    for k in range(int(300.0 * rate) + 1)
]
# canvas wide enough that the drifting run never hits the edge clamp,
# otherwise both runs would just pin at the border and tie
canvas = Screen(width=400_000, height=1080)
dev = preset("iteration2")
for label, rp in (
    ("reset every 120 s", ResetPolicy(period=120.0, enabled=True)),
    ("no reset         ", ResetPolicy(enabled=False)),
):
    path = run_pipeline(biased, None, fp, dev, canvas, rp)
    travel = math.hypot(path[-1].x - path[0].x, path[-1].y - path[0].y)
    print(f"{label}: cursor ends {travel:9.1f} px from where it started")

headline("appendix: the serial capture format round-trips")
text = serialize_serial_log(samples[:3])
print(text.rstrip())
again = parse_serial_log(text)
print(f"parsed back {len(again)} samples, first gyro tuple {again[0].gyro}")
