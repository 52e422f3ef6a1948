"""Report rendering: reference-style tables in text, CSV, or JSON.

Human-readable output prints microseconds at two decimal places; the
structured (JSON) format carries full nanosecond precision for automation.
"""

from __future__ import annotations

import json

from wirecal.gate import GateComparison, GateVerdict
from wirecal.residual import PlatformCalibration
from wirecal.sensitivity import DEFAULT_FILTER_NS as RECOMMENDED_FILTER_NS
from wirecal.sensitivity import ProfileComparison, SweepRow
from wirecal.store import DriftReport

TEXT = "text"
CSV = "csv"
STRUCTURED = "structured"
FORMATS = (TEXT, CSV, STRUCTURED)

REPORT_FILENAMES = {TEXT: "report.txt", CSV: "report.csv", STRUCTURED: "report.json"}


def us(ns: float | None) -> str:
    """Nanoseconds rendered as microseconds at report precision."""
    return "-" if ns is None else f"{ns / 1000:.2f}"


def _table(headers, rows) -> str:
    widths = [
        max(len(str(h)), *(len(str(r[i])) for r in rows)) if rows else len(str(h))
        for i, h in enumerate(headers)
    ]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def _csv(headers, rows) -> str:
    lines = [",".join(str(h) for h in headers)]
    lines.extend(",".join(str(c) for c in row) for row in rows)
    return "\n".join(lines)


def _json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def render_calibration(
    calibration: PlatformCalibration,
    fmt: str = TEXT,
    settings: dict | None = None,
) -> str:
    cal = calibration
    med_lo, med_hi = min(cal.trial_medians_ns), max(cal.trial_medians_ns)
    doc = {
        "platform": cal.platform.platform,
        "session_id": cal.platform.session_id,
        "state_label": cal.platform.state_label,
        "c_p_ns": cal.c_p_ns,
        "trial_medians_ns": list(cal.trial_medians_ns),
        "trial_median_range_ns": [med_lo, med_hi],
        "std_range_ns": list(cal.std_range_ns) if cal.std_range_ns else None,
        "n_trials": cal.n_trials,
        "tolerance_ns": cal.tolerance_ns,
        "k_factor": cal.k_factor,
        "settings": settings or {},
    }
    if fmt == STRUCTURED:
        return _json(doc)
    headers = ["platform", "C_p", "trial medians", "std(delta)", "n", "tau"]
    row = [
        cal.platform.platform,
        us(cal.c_p_ns),
        f"{us(med_lo)}, {us(med_hi)}",
        f"{us(cal.std_range_ns[0])}, {us(cal.std_range_ns[1])}" if cal.std_range_ns else "-",
        cal.n_trials,
        us(cal.tolerance_ns) if cal.tolerance_ns is not None else "-",
    ]
    if fmt == CSV:
        flat_headers = [
            "platform", "c_p_us", "median_min_us", "median_max_us",
            "std_min_us", "std_max_us", "n_trials", "tau_us",
        ]
        flat = [
            cal.platform.platform,
            us(cal.c_p_ns),
            us(med_lo),
            us(med_hi),
            us(cal.std_range_ns[0]) if cal.std_range_ns else "-",
            us(cal.std_range_ns[1]) if cal.std_range_ns else "-",
            cal.n_trials,
            us(cal.tolerance_ns) if cal.tolerance_ns is not None else "-",
        ]
        return _csv(flat_headers, [flat])
    lines = [f"Calibration summary (values in us, n={cal.n_trials} trials)"]
    if settings:
        lines.append("  " + "  ".join(f"{k}={v}" for k, v in sorted(settings.items())))
    lines.append(_table(headers, [row]))
    return "\n".join(lines)


def render_sweep(rows: list[SweepRow], fmt: str = TEXT) -> str:
    if fmt == STRUCTURED:
        return _json(
            {
                "recommended_threshold_ns": RECOMMENDED_FILTER_NS,
                "rows": [
                    {
                        "threshold_ns": r.threshold_ns,
                        "pair_count": r.pair_count,
                        "status": r.status,
                        "median_delta_ns": r.median_delta_ns,
                    }
                    for r in rows
                ],
            }
        )
    headers = ["filter_ns", "pairs", "status", "median_delta_us"]
    table_rows = [
        [
            r.threshold_ns,
            r.pair_count,
            "pass" if r.status == "pass" else "FAIL",
            us(r.median_delta_ns),
        ]
        for r in rows
    ]
    if fmt == CSV:
        return _csv(headers, table_rows)
    return (
        "Glitch filter sensitivity sweep\n"
        + _table(headers, table_rows)
        + f"\nrecommended filter: {RECOMMENDED_FILTER_NS} ns (headroom over observed glitches)"
    )


def render_profile_comparison(comp: ProfileComparison, fmt: str = TEXT) -> str:
    doc = {
        "med_high_ns": comp.med_high_ns,
        "med_low_ns": comp.med_low_ns,
        "med_sum_ns": comp.med_sum_ns,
        "c_p_abs_ns": comp.c_p_abs_ns,
        "coverage_ratio": comp.coverage_ratio,
        "residual_ns": comp.residual_ns,
        "over_prediction_fraction": comp.over_prediction_fraction,
    }
    if fmt == STRUCTURED:
        return _json(doc)
    headers = ["med(H)", "med(L)", "med(H+L)", "|C_p|", "coverage", "residual_us", "over_pred"]
    row = [
        us(comp.med_high_ns),
        us(comp.med_low_ns),
        us(comp.med_sum_ns),
        us(comp.c_p_abs_ns),
        f"{comp.coverage_ratio:.4f}",
        f"{comp.residual_ns / 1000:+.2f}",
        f"{comp.over_prediction_fraction * 100:+.1f}%",
    ]
    if fmt == CSV:
        return _csv(headers, [row])
    return "Direct GPIO call profile vs calibrated constant (us)\n" + _table(headers, [row])


def render_gate_verdict(verdict: GateVerdict, fmt: str = TEXT, settings: dict | None = None) -> str:
    doc = {
        "accepted": verdict.accepted,
        "worst_residual_ns": verdict.worst_residual_ns,
        "failing_fraction": verdict.failing_fraction,
        "margin_ns": verdict.margin_ns,
        "reason": verdict.reason,
        "settings": settings or {},
    }
    if fmt == STRUCTURED:
        return _json(doc)
    headers = ["verdict", "worst_residual_us", "failing_fraction", "margin_us"]
    row = [
        "ACCEPT" if verdict.accepted else "REJECT",
        f"{verdict.worst_residual_ns / 1000:+.2f}",
        f"{verdict.failing_fraction:.3f}",
        us(verdict.margin_ns),
    ]
    if fmt == CSV:
        return _csv(headers, [row])
    lines = []
    if settings:
        lines.append("  ".join(f"{k}={v}" for k, v in sorted(settings.items())))
    lines.append(_table(headers, [row]))
    lines.append(verdict.reason)
    return "\n".join(lines)


def render_gate_comparison(comparison: GateComparison, fmt: str = TEXT) -> str:
    if fmt == STRUCTURED:
        return _json(
            {
                "tau_ns": comparison.tau_ns,
                "cells": [
                    {
                        "mode": mode,
                        "platform": platform,
                        "accepted": v.accepted,
                        "worst_residual_ns": v.worst_residual_ns,
                        "margin_ns": v.margin_ns,
                        "failing_fraction": v.failing_fraction,
                    }
                    for mode, platform, v in comparison.cells
                ],
            }
        )
    headers = ["mode", "platform", "verdict", "worst_residual_us", "margin_us"]
    rows = [
        [
            mode,
            platform,
            "accept" if v.accepted else "reject",
            f"{v.worst_residual_ns / 1000:+.2f}",
            us(v.margin_ns),
        ]
        for mode, platform, v in comparison.cells
    ]
    if fmt == CSV:
        return _csv(headers, rows)
    title = f"Gate comparison at tau = {us(comparison.tau_ns)} us"
    return title + "\n" + _table(headers, rows)


def render_drift(report: DriftReport, fmt: str = TEXT) -> str:
    doc = {
        "platform": report.platform,
        "session_ids": list(report.session_ids),
        "session_constants_ns": list(report.session_constants_ns),
        "range_ns": report.range_ns,
        "threshold_ns": report.threshold_ns,
        "flagged": report.flagged,
    }
    if fmt == STRUCTURED:
        return _json(doc)
    headers = ["session", "C_p_us"]
    rows = [[sid, us(c)] for sid, c in zip(report.session_ids, report.session_constants_ns)]
    if fmt == CSV:
        rows = [
            [report.platform, sid, us(c), us(report.range_ns), report.flagged]
            for sid, c in zip(report.session_ids, report.session_constants_ns)
        ]
        return _csv(["platform", "session", "c_p_us", "range_us", "flagged"], rows)
    lines = [f"Cross-session drift for platform {report.platform}"]
    lines.append(_table(headers, rows))
    lines.append(
        f"range {us(report.range_ns)} us over {len(report.session_ids)} sessions; "
        f"threshold {us(report.threshold_ns)} us -> "
        + ("FLAGGED" if report.flagged else "within band")
    )
    return "\n".join(lines)
