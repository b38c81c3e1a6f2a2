"""Turn session records into the summary/report layer.

A Report holds per-group movement-time summaries, every pairwise t-test
under both variance assumptions, per-trial means with a fitted trendline
per group, and (when all records share a config) the index-of-difficulty
table for the generated target sequences. render_report produces aligned
plain-text tables; report_to_dict the machine-readable variant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from ..stats import GroupSummary, TTestResult, Trendline, fitts_id, summarize, t_test, trendline
from ..task import GROUPS, SessionRecord, generate_targets

# Observations need n >= 2 for a standard deviation; groups below that are
# left out of the summary table rather than guessed at.
_MIN_GROUP_N = 2


@dataclass(frozen=True)
class PairComparison:
    group_a: str
    group_b: str
    pooled: TTestResult
    welch: TTestResult


@dataclass(frozen=True)
class Report:
    summaries: dict[str, GroupSummary]
    pairs: tuple[PairComparison, ...]
    trial_means: dict[str, tuple[tuple[int, float], ...]]
    trendlines: dict[str, Trendline]
    difficulty: dict[int, tuple[float, ...]] | None = None


def _pairs_for(summaries: Mapping[str, GroupSummary]) -> tuple[PairComparison, ...]:
    return tuple(
        PairComparison(
            group_a=a,
            group_b=b,
            pooled=t_test(summaries[a], summaries[b], assumption="pooled"),
            welch=t_test(summaries[a], summaries[b], assumption="welch"),
        )
        for a, b in combinations(summaries, 2)
    )


def analyze_summaries(summaries: Mapping[str, GroupSummary]) -> Report:
    """Report from literal summary statistics (no raw trials available)."""
    if not summaries:
        raise ValueError("no records")
    return Report(
        summaries=dict(summaries),
        pairs=_pairs_for(summaries),
        trial_means={},
        trendlines={},
        difficulty=None,
    )


def _difficulty_table(cfg, trials: Sequence[int]) -> dict[int, tuple[float, ...]]:
    """Index of difficulty per step of each trial's target sequence.

    The first step starts from screen center (where every trial begins);
    later steps start from the previous target. Width is the target diameter.
    """
    width = 2.0 * cfg.target_radius
    out = {}
    for trial_index in trials:
        targets = generate_targets(cfg, trial_index)
        origin = ((cfg.screen.width - 1) / 2.0, (cfg.screen.height - 1) / 2.0)
        ids = []
        for tx, ty in targets:
            ids.append(fitts_id(math.hypot(tx - origin[0], ty - origin[1]), width))
            origin = (tx, ty)
        out[trial_index] = tuple(ids)
    return out


def analyze(sessions: Sequence[SessionRecord]) -> Report:
    """Full report over in-memory records.

    Raises ValueError("no records") on empty input and fails when no group
    reaches two observations; a report of nothing is worse than an error.
    """
    if not sessions:
        raise ValueError("no records")

    by_group: dict[str, list[float]] = {}
    by_group_trial: dict[str, dict[int, list[float]]] = {}
    for s in sessions:
        for trial in s.trials:
            by_group.setdefault(s.group, []).append(trial.trial_total)
            by_group_trial.setdefault(s.group, {}).setdefault(trial.trial_index, []).append(
                trial.trial_total
            )

    ordered = [g for g in GROUPS if g in by_group]
    summaries = {
        g: summarize(by_group[g]) for g in ordered if len(by_group[g]) >= _MIN_GROUP_N
    }
    if not summaries:
        raise ValueError("no group has enough trials to summarize (need 2)")

    trial_means: dict[str, tuple[tuple[int, float], ...]] = {}
    trendlines: dict[str, Trendline] = {}
    for g in ordered:
        means = tuple(
            (idx, math.fsum(v) / len(v)) for idx, v in sorted(by_group_trial[g].items())
        )
        trial_means[g] = means
        # trendline() regresses against implied indices 1..k, so only a
        # gap-free series starting at trial 1 can be fitted honestly
        if len(means) >= 2 and [i for i, _ in means] == list(range(1, len(means) + 1)):
            trendlines[g] = trendline([m for _, m in means])

    difficulty = None
    configs = {s.config for s in sessions}
    if len(configs) == 1:
        cfg = next(iter(configs))
        difficulty = _difficulty_table(cfg, range(1, cfg.trials_per_participant + 1))

    return Report(
        summaries=summaries,
        pairs=_pairs_for(summaries),
        trial_means=trial_means,
        trendlines=trendlines,
        difficulty=difficulty,
    )


def _fmt_p(p: float) -> str:
    return "<0.0001" if p < 0.0001 else f"{p:.4f}"


def render_report(report: Report) -> str:
    """Aligned plain-text tables; the shape mirrors the appendix layout."""
    lines: list[str] = []

    lines.append("Group summaries")
    lines.append(f"{'group':<12} {'n':>4} {'mean (s)':>10} {'sd (s)':>10}")
    for g, s in report.summaries.items():
        lines.append(f"{g:<12} {s.n:>4} {s.mean:>10.3f} {s.sd:>10.3f}")

    if report.pairs:
        lines.append("")
        lines.append("Pairwise comparisons of mean movement time (two-tailed)")
        lines.append(
            f"{'groups':<28} {'variances':<10} {'t':>8} {'df':>8} {'p':>8}"
        )
        for pair in report.pairs:
            label = f"{pair.group_a} vs {pair.group_b}"
            for name, r in (("pooled", pair.pooled), ("welch", pair.welch)):
                lines.append(
                    f"{label:<28} {name:<10} {r.t:>8.3f} {r.df:>8.3f} {_fmt_p(r.p_two_tailed):>8}"
                )

    if report.trial_means:
        lines.append("")
        lines.append("Mean trial time by trial index (learning trend)")
        indices = sorted({i for means in report.trial_means.values() for i, _ in means})
        header = f"{'group':<12}" + "".join(f" {'t' + str(i):>8}" for i in indices)
        header += f" {'slope':>9} {'intercept':>10}"
        lines.append(header)
        for g, means in report.trial_means.items():
            cells = dict(means)
            row = f"{g:<12}" + "".join(
                f" {cells[i]:>8.3f}" if i in cells else f" {'-':>8}" for i in indices
            )
            fit = report.trendlines.get(g)
            row += f" {fit.slope:>9.3f} {fit.intercept:>10.3f}" if fit else f" {'-':>9} {'-':>10}"
            lines.append(row)

    if report.difficulty:
        lines.append("")
        lines.append("Index of difficulty per target step (bits)")
        for trial_index, ids in sorted(report.difficulty.items()):
            cells = " ".join(f"{v:6.2f}" for v in ids)
            lines.append(f"trial {trial_index}: {cells}")

    return "\n".join(lines) + "\n"


def report_to_dict(report: Report) -> dict:
    """JSON-shaped mirror of the Report for files and HTTP responses."""

    def ttest_obj(r: TTestResult) -> dict:
        return {
            "t": r.t,
            "df": r.df,
            "p_two_tailed": r.p_two_tailed,
            "variance_assumption": r.variance_assumption,
        }

    return {
        "summaries": {
            g: {"mean_s": s.mean, "sd_s": s.sd, "n": s.n} for g, s in report.summaries.items()
        },
        "comparisons": [
            {
                "group_a": pair.group_a,
                "group_b": pair.group_b,
                "pooled": ttest_obj(pair.pooled),
                "welch": ttest_obj(pair.welch),
            }
            for pair in report.pairs
        ],
        "trial_means": {
            g: {str(i): m for i, m in means} for g, means in report.trial_means.items()
        },
        "trendlines": {
            g: {"slope": f.slope, "intercept": f.intercept} for g, f in report.trendlines.items()
        },
        "difficulty": (
            {str(i): list(ids) for i, ids in report.difficulty.items()}
            if report.difficulty
            else None
        ),
    }
