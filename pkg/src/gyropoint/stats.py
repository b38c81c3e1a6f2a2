"""Movement-time statistics: summaries, two-sample t-tests, trend slopes,
and pointing difficulty indices.

The t machinery accepts summary statistics rather than raw observations so
that published (mean, sd, n) triples can be compared directly, and it keeps
Welch degrees of freedom non-integral; rounding them changes p-values at the
third decimal, which is exactly the resolution the comparisons here run at.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from scipy.special import betainc

__all__ = [
    "GroupSummary",
    "TTestResult",
    "Trendline",
    "summarize",
    "t_test",
    "t_cdf",
    "trendline",
    "fitts_id",
    "steering_index",
]


@dataclass(frozen=True)
class GroupSummary:
    """Mean, sample SD (n-1 denominator), and observation count for one group."""

    mean: float
    sd: float
    n: int

    def __post_init__(self) -> None:
        if self.sd < 0:
            raise ValueError(f"sd must be non-negative, got {self.sd}")
        if self.n < 2:
            raise ValueError(f"need at least 2 observations, got n={self.n}")
        if not (math.isfinite(self.mean) and math.isfinite(self.sd)):
            raise ValueError("summary values must be finite")


@dataclass(frozen=True)
class TTestResult:
    """Two-sample t statistic with its degrees of freedom and two-tailed p."""

    t: float
    df: float
    p_two_tailed: float
    variance_assumption: str

    def __post_init__(self) -> None:
        if self.df <= 0:
            raise ValueError(f"df must be positive, got {self.df}")
        if not 0.0 <= self.p_two_tailed <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p_two_tailed}")
        if self.variance_assumption not in ("pooled", "welch"):
            raise ValueError(f"unknown variance assumption {self.variance_assumption!r}")


@dataclass(frozen=True)
class Trendline:
    """Least-squares line of mean movement time against trial index."""

    slope: float
    intercept: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.slope) and math.isfinite(self.intercept)):
            raise ValueError("trendline coefficients must be finite")


def summarize(xs: Iterable[float]) -> GroupSummary:
    """Arithmetic mean and sample standard deviation of a sequence.

    Raises ValueError for fewer than two observations; an SD over one point
    is undefined under the n-1 convention used throughout.
    """
    data = [float(x) for x in xs]
    n = len(data)
    if n < 2:
        raise ValueError(f"need at least 2 observations, got {n}")
    mean = math.fsum(data) / n
    ss = math.fsum((x - mean) ** 2 for x in data)
    return GroupSummary(mean=mean, sd=math.sqrt(ss / (n - 1)), n=n)


def t_cdf(t: float, df: float) -> float:
    """Cumulative distribution of Student's t with (possibly non-integral) df.

    Uses the regularized incomplete beta function: for t <= 0,
    F(t) = I_x(df/2, 1/2) / 2 with x = df / (df + t^2), and the t > 0 case
    follows by symmetry. Valid for any real df > 0, which Welch tests need.
    """
    if df <= 0:
        raise ValueError(f"df must be positive, got {df}")
    if t == 0.0:
        return 0.5
    x = df / (df + t * t)
    half_tail = 0.5 * float(betainc(0.5 * df, 0.5, x))
    return half_tail if t < 0 else 1.0 - half_tail


def t_test(a: GroupSummary, b: GroupSummary, assumption: str = "pooled") -> TTestResult:
    """Two-sample t-test from group summaries.

    assumption="pooled" assumes equal population variances
    (df = n_a + n_b - 2); assumption="welch" drops that assumption and uses
    Welch-Satterthwaite degrees of freedom. p is always two-tailed.

    Degenerate inputs: if both SDs are zero the statistic is 0/0; equal means
    are reported as t=0, p=1 (no evidence of any difference), while unequal
    means raise, since a finite t does not exist.
    """
    if assumption not in ("pooled", "welch"):
        raise ValueError(f"unknown variance assumption {assumption!r}")
    diff = a.mean - b.mean
    if a.sd == 0.0 and b.sd == 0.0:
        if diff == 0.0:
            return TTestResult(0.0, float(a.n + b.n - 2), 1.0, assumption)
        raise ValueError("both groups have zero variance but different means")

    va, vb = a.sd * a.sd, b.sd * b.sd
    if assumption == "pooled":
        sp2 = ((a.n - 1) * va + (b.n - 1) * vb) / (a.n + b.n - 2)
        se = math.sqrt(sp2 * (1.0 / a.n + 1.0 / b.n))
        df = float(a.n + b.n - 2)
    else:
        qa, qb = va / a.n, vb / b.n
        se = math.sqrt(qa + qb)
        df = (qa + qb) ** 2 / (qa * qa / (a.n - 1) + qb * qb / (b.n - 1))
    t = diff / se
    p = 2.0 * t_cdf(-abs(t), df)
    return TTestResult(t=t, df=df, p_two_tailed=p, variance_assumption=assumption)


def trendline(trial_means: Sequence[float]) -> Trendline:
    """Ordinary least squares of mean MT against trial index 1..k.

    Centered formulation keeps the normal equations well conditioned for the
    short series this sees (k is typically 4).
    """
    k = len(trial_means)
    if k < 2:
        raise ValueError(f"need at least 2 trial means, got {k}")
    xs = range(1, k + 1)
    x_mean = (k + 1) / 2.0
    y_mean = math.fsum(trial_means) / k
    sxx = math.fsum((x - x_mean) ** 2 for x in xs)
    sxy = math.fsum((x - x_mean) * (y - y_mean) for x, y in zip(xs, trial_means))
    slope = sxy / sxx
    return Trendline(slope=slope, intercept=y_mean - slope * x_mean)


def fitts_id(distance: float, width: float) -> float:
    """Index of difficulty in bits, Shannon formulation: log2(D/W + 1)."""
    if width <= 0:
        raise ValueError(f"width must be positive, got {width}")
    if distance < 0:
        raise ValueError(f"distance must be non-negative, got {distance}")
    return math.log2(distance / width + 1.0)


def steering_index(path_length: float, tunnel_width: float) -> float:
    """Steering-law difficulty of a constant-width tunnel: length / width."""
    if tunnel_width <= 0:
        raise ValueError(f"tunnel width must be positive, got {tunnel_width}")
    if path_length < 0:
        raise ValueError(f"path length must be non-negative, got {path_length}")
    return path_length / tunnel_width
