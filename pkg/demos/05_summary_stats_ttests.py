#!/usr/bin/env python3
"""Working from summary tables alone: t tests without the raw data.

Study writeups often survive only as (mean, sd, n) triples per group.
Everything in the stats layer runs from exactly that, so the numbers in
an old table can be checked, re-derived, or extended long after the raw
trials are gone. This script does all three.

Run:  python3 demos/05_summary_stats_ttests.py
"""

from gyropoint.stats import GroupSummary, fitts_id, summarize, t_cdf, t_test, trendline

# a summary table of mean movement times you might inherit, seconds
control = GroupSummary(mean=4.75, sd=1.42, n=32)
iteration1 = GroupSummary(mean=15.62, sd=13.04, n=32)
iteration2 = GroupSummary(mean=9.50, sd=5.40, n=32)

print("pairwise comparisons from the table alone (two-tailed):")
pairs = [
    ("control vs iteration1", control, iteration1),
    ("control vs iteration2", control, iteration2),
    ("iteration1 vs iteration2", iteration1, iteration2),
]
for label, a, b in pairs:
    for assumption in ("pooled", "welch"):
        r = t_test(a, b, assumption=assumption)
        print(f"  {label:26} {assumption:6}  t={r.t:8.3f}  df={r.df:7.3f}  p={r.p_two_tailed:.6f}")

print()
print("pooled and Welch agree on t when group sizes match, but Welch's")
print("df drops toward the noisier group's n when the variances differ")
print("by an order of magnitude, as they do for iteration1 above.")

print()
print("p values are plain CDF arithmetic, nothing hidden:")
r = t_test(iteration1, iteration2)
p_manual = 2.0 * (1.0 - t_cdf(abs(r.t), r.df))
print(f"  t={r.t:.4f}, df={r.df:.0f}: 2*(1 - t_cdf(|t|, df)) = {p_manual:.6f} vs reported {r.p_two_tailed:.6f}")

print()
print("if a table omits n, the t statistics pin it down; sweeping candidates:")
for n in (8, 16, 24, 32, 64, 96, 128):
    t1 = t_test(GroupSummary(control.mean, control.sd, n), GroupSummary(iteration1.mean, iteration1.sd, n)).t
    t2 = t_test(GroupSummary(control.mean, control.sd, n), GroupSummary(iteration2.mean, iteration2.sd, n)).t
    t3 = t_test(GroupSummary(iteration1.mean, iteration1.sd, n), GroupSummary(iteration2.mean, iteration2.sd, n)).t
    hit = abs(t1 - -4.687) <= 0.01 and abs(t2 - -4.811) <= 0.01 and abs(t3 - 2.452) <= 0.01
    mark = "  <- matches all three observed t values" if hit else ""
    print(f"  n={n:3}: t = {t1:7.3f} {t2:7.3f} {t3:7.3f}{mark}")

print()
print("summarize() is the bridge from raw values to table rows:")
raw = [4.1, 5.3, 4.8, 5.9, 4.4]
s = summarize(raw)
print(f"  {raw} -> mean={s.mean:.3f} sd={s.sd:.3f} n={s.n}")

print()
print("and per-trial means feed a least-squares learning trend:")
means = [17.9, 14.2, 11.9, 11.6]
tl = trendline(means)
print(f"  {means} -> slope {tl.slope:+.3f} s/trial, intercept {tl.intercept:.3f} s")

print()
print("difficulty of a 500 px reach onto a 48 px target, for scale:")
print(f"  fitts_id(500, 48) = {fitts_id(500, 48):.3f} bits")
