#!/usr/bin/env python3
"""Sweeping the glitch-filter threshold over a capture with spurious edges.

The fast-platform scenario plants six sub-75 ns spurious edges in the
capture: two extra pulses (20 ns and 40 ns wide) and one adjacent pair of
same-direction edges 60 ns apart.  Below 75 ns the sweep shows inflated
pair counts and strict-ordering failures; at 75 ns and above, pairing is
clean and the recovered median residual is identical across thresholds.
"""

from wirecal import build_dataset, builtin_scenario, filter_sweep
from wirecal.reporting import render_sweep
from wirecal.sensitivity import DEFAULT_SWEEP_THRESHOLDS_NS

dataset = build_dataset(builtin_scenario("jetson-paper"))
print(f"capture has {len(dataset.capture.events)} edges for {len(dataset.records)} inferences")
print(f"expected pulse pairs: {len(dataset.records)}\n")

rows = filter_sweep(
    dataset.capture,
    list(dataset.records),
    thresholds_ns=DEFAULT_SWEEP_THRESHOLDS_NS,
    expected_count=len(dataset.records),
)
print(render_sweep(rows))

passing = [r.median_delta_ns for r in rows if r.status == "pass"]
spread = (max(passing) - min(passing)) / 1000
print(f"\nmedian residual spread across passing thresholds: {spread:.4f} us")
print("the calibration is insensitive to the filter setting inside the robust band;")
print("100 ns gives headroom over every glitch seen without touching real dwells")
