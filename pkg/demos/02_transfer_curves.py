#!/usr/bin/env python3
"""Print the deflection-to-velocity curves for the two device tunings.

The transfer function has three regimes per axis: dead (inside the
threshold), linear (sensitivity times the deflection beyond it), and
clamped (max_speed). This script tabulates both presets side by side,
then shows why the dead-zone edge matters for small corrective motions.

Run:  python3 demos/02_transfer_curves.py
"""

from gyropoint.sensing import Orientation
from gyropoint.transfer import axis_velocity, cursor_velocity, preset

i1 = preset("iteration1")  # 20 px/s/deg beyond an 8 deg dead zone
i2 = preset("iteration2")  # 60 px/s/deg beyond a 2 deg dead zone

print("deflection (deg) -> horizontal cursor speed (px/s)")
print()
print(f"{'deflection':>10}  {'iteration1':>10}  {'iteration2':>10}")
for d in (0.0, 1.0, 2.0, 4.0, 8.0, 10.0, 16.0, 30.0, 60.0, 75.0):
    v1 = axis_velocity(d, i1.threshold_x, i1.sensitivity, i1.max_speed)
    v2 = axis_velocity(d, i2.threshold_x, i2.sensitivity, i2.max_speed)
    print(f"{d:10.1f}  {v1:10.1f}  {v2:10.1f}")

print()
print("reading the table:")
print(f" - iteration1 is silent until {i1.threshold_x:.0f} deg, iteration2 until {i2.threshold_x:.0f} deg")
print(f" - both saturate at {i1.max_speed:.0f} px/s; iteration2 gets there at "
      f"{i2.threshold_x + i2.max_speed / i2.sensitivity:.0f} deg of wrist deflection,")
print(f"   iteration1 not until {i1.threshold_x + i1.max_speed / i1.sensitivity:.0f} deg, "
      "beyond what a comfortable wrist produces")

# the subtractive form matters: velocity is continuous at the threshold,
# so there is no jump when the wrist crosses the dead-zone edge
eps = 1e-9
for p in (i1, i2):
    inside = axis_velocity(p.threshold_x - eps, p.threshold_x, p.sensitivity, p.max_speed)
    outside = axis_velocity(p.threshold_x + eps, p.threshold_x, p.sensitivity, p.max_speed)
    print(f"\n{p.preset_name}: v({p.threshold_x}-eps) = {inside}, v({p.threshold_x}+eps) = {outside:.3g}")

print()
print("full 2-axis form (positive pitch moves the cursor up, so vy < 0):")
zero = Orientation(t=0.0, yaw=0.0, pitch=0.0, roll=0.0)
o = Orientation(t=1.0, yaw=12.0, pitch=6.0, roll=0.0)
for p in (i1, i2):
    vx, vy = cursor_velocity(o, zero, p)
    print(f"  {p.preset_name}: yaw +12 deg, pitch +6 deg  ->  vx={vx:7.1f}, vy={vy + 0.0:7.1f}")
print("  (iteration1's 8 deg dead zone swallows the 6 deg pitch entirely)")
