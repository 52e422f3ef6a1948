#!/usr/bin/env python3
"""Does tight-loop GPIO call profiling predict the calibrated constant?

Each scenario ships a direct call-duration profile (5000 timed high/low
iterations, 20-iteration warm-up).  Comparing med(H+L) against |C_p| shows
two different answers: the fast platform's constant is mostly explained by
call duration (~89% coverage), while the slow platform's tight-loop profile
over-predicts its in-context constant by ~19%.  Profiling alone cannot
replace calibration in the deployed measurement context.
"""

from wirecal import build_dataset, builtin_scenario, profile_compare, profile_summary
from wirecal.reporting import render_profile_comparison

CONSTANTS_NS = {"jetson-paper": -20_000, "pi-paper": -86_130}

for name, c_p_ns in CONSTANTS_NS.items():
    dataset = build_dataset(builtin_scenario(name))
    summary = profile_summary(list(dataset.profile), warmup_exclude=20)
    print(f"=== {name} (|C_p| = {abs(c_p_ns) / 1000:.2f} us) ===")
    comparison = profile_compare(summary, c_p_ns)
    print(render_profile_comparison(comparison))
    print()

print("note: med(H+L) is the median of per-iteration sums, not med(H) + med(L);")
print("on the slow platform those differ because high and low durations co-vary")
