import json
import math
from dataclasses import replace

import pytest

from gyropoint.harness.report import (
    analyze,
    analyze_summaries,
    render_report,
    report_to_dict,
)
from gyropoint.stats import GroupSummary, fitts_id, summarize
from gyropoint.task import TaskConfig, generate_targets

TABLE_SUMMARIES = {
    "control": GroupSummary(4.75, 1.42, 32),
    "iteration1": GroupSummary(15.62, 13.04, 32),
    "iteration2": GroupSummary(9.50, 5.40, 32),
}


def test_summaries_match_raw_records(small_sessions):
    report = analyze(small_sessions)
    for group, summary in report.summaries.items():
        totals = [
            t.trial_total for s in small_sessions if s.group == group for t in s.trials
        ]
        assert summary == summarize(totals)
        assert summary.n == 4  # 2 participants x 2 trials


def test_each_pair_appears_exactly_once():
    report = analyze_summaries(TABLE_SUMMARIES)
    pairs = {(p.group_a, p.group_b) for p in report.pairs}
    assert pairs == {
        ("control", "iteration1"),
        ("control", "iteration2"),
        ("iteration1", "iteration2"),
    }
    assert len(report.pairs) == 3


def test_pair_carries_both_assumptions():
    report = analyze_summaries(TABLE_SUMMARIES)
    pair = report.pairs[0]
    assert pair.pooled.variance_assumption == "pooled"
    assert pair.welch.variance_assumption == "welch"
    assert abs(pair.pooled.t - (-4.687)) < 0.005


def test_trial_means_and_two_point_slope(small_sessions):
    report = analyze(small_sessions)
    for group, means in report.trial_means.items():
        assert [i for i, _ in means] == [1, 2]
        by_index = {1: [], 2: []}
        for s in small_sessions:
            if s.group == group:
                for t in s.trials:
                    by_index[t.trial_index].append(t.trial_total)
        for idx, mean in means:
            assert mean == pytest.approx(math.fsum(by_index[idx]) / len(by_index[idx]), abs=0)
        # OLS through two points passes through both: slope is their difference
        fit = report.trendlines[group]
        assert fit.slope == pytest.approx(means[1][1] - means[0][1], abs=1e-12)


def test_difficulty_table_matches_generator(small_sessions):
    report = analyze(small_sessions)
    cfg = small_sessions[0].config
    assert report.difficulty is not None
    assert sorted(report.difficulty) == [1, 2]
    targets = generate_targets(cfg, 1)
    origin = ((cfg.screen.width - 1) / 2.0, (cfg.screen.height - 1) / 2.0)
    first = fitts_id(math.hypot(targets[0][0] - origin[0], targets[0][1] - origin[1]),
                     2 * cfg.target_radius)
    assert report.difficulty[1][0] == pytest.approx(first, abs=0)


def test_mixed_configs_drop_difficulty(small_sessions):
    mixed = list(small_sessions)
    mixed[0] = replace(mixed[0], config=replace(mixed[0].config, seed=99))
    report = analyze(mixed)
    assert report.difficulty is None


def test_empty_input_raises_no_records():
    with pytest.raises(ValueError, match="no records"):
        analyze([])
    with pytest.raises(ValueError, match="no records"):
        analyze_summaries({})


def test_single_trial_group_is_not_summarized(small_sessions):
    lone = replace(small_sessions[0], trials=small_sessions[0].trials[:1])
    report = analyze([lone] + [s for s in small_sessions if s.group == "iteration2"])
    assert set(report.summaries) == {"iteration2"}
    assert report.pairs == ()
    # the thin group still shows its single trial mean
    assert [i for i, _ in report.trial_means["control"]] == [1]
    assert "control" not in report.trendlines


def test_nothing_summarizable_raises(small_sessions):
    lone = replace(small_sessions[0], trials=small_sessions[0].trials[:1])
    with pytest.raises(ValueError, match="enough trials"):
        analyze([lone])


def test_render_mentions_all_sections(small_sessions):
    text = render_report(analyze(small_sessions))
    for heading in (
        "Group summaries",
        "Pairwise comparisons",
        "learning trend",
        "Index of difficulty",
    ):
        assert heading in text
    assert "control" in text and "iteration2" in text


def test_render_small_p_shown_as_bound():
    text = render_report(analyze_summaries(TABLE_SUMMARIES))
    assert "<0.0001" in text


def test_report_dict_is_json_ready(small_sessions):
    payload = report_to_dict(analyze(small_sessions))
    parsed = json.loads(json.dumps(payload))
    assert set(parsed) == {"summaries", "comparisons", "trial_means", "trendlines", "difficulty"}
    assert parsed["summaries"]["control"]["n"] == 4
    assert parsed["comparisons"][0]["pooled"]["variance_assumption"] == "pooled"
