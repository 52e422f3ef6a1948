"""Shared pipeline shorthand for the demo scripts."""

from wirecal import (
    OperatingStateTag,
    align,
    build_dataset,
    builtin_scenario,
    compute_deltas,
    glitch_filter,
    group_by_trial,
    pair_edges,
    platform_constant,
    segment_trials,
    trial_stats,
)


def calibrated_series(scenario_name, filter_ns=100, warmup_exclude=1):
    """(residual series list, PlatformCalibration) for a built-in scenario."""
    dataset = build_dataset(builtin_scenario(scenario_name))
    filtered = glitch_filter(dataset.capture, filter_ns)
    outcome = pair_edges(filtered, expected_count=len(dataset.records))
    assert outcome.status == "pass", outcome
    trials = align(
        group_by_trial(list(dataset.records)), segment_trials(outcome.pairs), warmup_exclude
    )
    series = [compute_deltas(t) for t in trials]
    stats = [trial_stats(s) for s in series]
    platform = scenario_name.split("-")[0]
    calibration = platform_constant(stats, OperatingStateTag(platform, session_id="demo"))
    return series, calibration
