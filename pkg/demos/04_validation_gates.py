#!/usr/bin/env python3
"""Why validation gates must subtract the platform constant.

A uniform tolerance applied to raw residuals cannot bind both platforms at
once: tight enough to constrain the fast platform it rejects every slow
platform measurement, loose enough to admit the slow platform it stops
constraining the fast one.  Subtracting each platform's calibrated constant
first makes one tolerance work everywhere, while still catching real
faults by an order of magnitude.
"""

from _common import calibrated_series

from wirecal import GateConfig, evaluate_gate, gate_comparison
from wirecal.gate import PLATFORM_AWARE
from wirecal.reporting import render_gate_comparison, render_gate_verdict

jetson_series, jetson_cal = calibrated_series("jetson-paper")
pi_series, pi_cal = calibrated_series("pi-paper")
constants = {"jetson": jetson_cal.c_p_ns, "pi": pi_cal.c_p_ns}

for tau_ns in (37_000, 100_000):
    print(render_gate_comparison(gate_comparison(jetson_series, pi_series, tau_ns, constants)))
    print()

# fault injection: widths shifted by -413.87 us -> residuals an order of
# magnitude beyond the tolerance, rejected instantly
fault_series, _ = calibrated_series("pi-fault-delta")
verdict = evaluate_gate(
    fault_series,
    GateConfig(mode=PLATFORM_AWARE, tolerance_ns=37_000, constant_ns=pi_cal.c_p_ns),
)
print("stuck-line style fault against the calibrated constant:")
print(render_gate_verdict(verdict))
