#!/usr/bin/env python3
"""Calibrating per-platform timing constants from synthetic wire captures.

Walks the full pipeline on the two reference scenarios: pair wire edges
into pulses, align them with the orchestrator's software timestamps, and
reduce the signed residuals (wire width minus clock interval) to one
constant per platform.
"""

from wirecal import (
    OperatingStateTag,
    align,
    builtin_scenario,
    build_dataset,
    compute_deltas,
    glitch_filter,
    group_by_trial,
    pair_edges,
    platform_constant,
    segment_trials,
    trial_stats,
)
from wirecal.reporting import render_calibration, us

for name in ("jetson-paper", "pi-paper"):
    print(f"=== scenario {name} ===")
    dataset = build_dataset(builtin_scenario(name))
    print(f"{len(dataset.records)} inferences, {len(dataset.capture.events)} wire edges")

    # 1. clean the edge stream and pair rising with falling edges
    filtered = glitch_filter(dataset.capture, 100)
    outcome = pair_edges(filtered, expected_count=len(dataset.records))
    print(f"pairing: {outcome.pair_count} pulses, status {outcome.status}")

    # 2. split the long capture into trials and zip with the records
    segments = segment_trials(outcome.pairs)
    trials = align(group_by_trial(list(dataset.records)), segments, warmup_exclude=1)
    print(f"{len(trials)} trials, {sum(len(t.effective_items) for t in trials)} post-warmup inferences")

    # 3. residuals -> per-trial stats -> platform constant
    stats = [trial_stats(compute_deltas(t)) for t in trials]
    platform = name.split("-")[0]
    cal = platform_constant(stats, OperatingStateTag(platform, session_id="demo"))
    print(render_calibration(cal))

    # wire edges sit inside their call windows, so residuals are never positive
    worst = max(max(compute_deltas(t).deltas_ns) for t in trials)
    print(f"largest residual: {us(worst)} us (always <= 0)\n")
