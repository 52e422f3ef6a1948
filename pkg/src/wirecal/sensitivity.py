"""Filter-threshold sweeps and direct GPIO profile comparison.

filter_sweep re-runs filter -> pair -> align -> median residual at each
threshold to show how sensitive pairing and the recovered constant are to
the glitch-filter setting.  profile_summary / profile_compare reduce a
tight-loop call-duration profile and ask how much of a platform constant it
explains.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from wirecal.errors import AlignmentError, ConfigError
from wirecal.ingest import InferenceRecord, EdgeCapture, ProfileSample, group_by_trial
from wirecal.pulse import (
    DEFAULT_GAP_THRESHOLD_NS,
    DEFAULT_WARMUP_EXCLUDE,
    align,
    glitch_filter,
    pair_edges,
    segment_trials,
)
from wirecal.residual import OUTER, compute_deltas

# The canonical 13-value sweep from 0 to 2000 ns.
DEFAULT_SWEEP_THRESHOLDS_NS = (0, 25, 50, 75, 100, 125, 150, 175, 200, 250, 500, 1000, 2000)

# Recommended default filter: enough headroom above observed sub-75 ns
# glitches on either platform without approaching real dwell widths.
DEFAULT_FILTER_NS = 100

DEFAULT_PROFILE_WARMUP = 20


@dataclass(frozen=True)
class SweepRow:
    """One threshold's outcome; median_delta_ns only when alignment passed."""

    threshold_ns: int
    pair_count: int
    status: str
    median_delta_ns: float | None = None


@dataclass(frozen=True)
class ProfileComparison:
    """Direct call-duration profile vs a calibrated platform constant.

    coverage_ratio = med_sum / |C_p|; residual_ns = med_sum - |C_p|;
    over_prediction_fraction = residual / |C_p| (positive when the tight-loop
    profile over-predicts the in-context constant).
    """

    med_high_ns: float
    med_low_ns: float
    med_sum_ns: float
    c_p_abs_ns: float
    coverage_ratio: float
    residual_ns: float
    over_prediction_fraction: float


def filter_sweep(
    capture: EdgeCapture,
    records: list[InferenceRecord] | None,
    thresholds_ns=DEFAULT_SWEEP_THRESHOLDS_NS,
    expected_count: int | None = None,
    gap_threshold_ns: int = DEFAULT_GAP_THRESHOLD_NS,
    warmup_exclude: int = DEFAULT_WARMUP_EXCLUDE,
    convention: str = OUTER,
) -> list[SweepRow]:
    """One SweepRow per threshold: filter, pair, and (on pass) align.

    Failures are rows, not exceptions.  median_delta_ns is the pooled median
    of post-warmup residuals across all trials; rows that fail pairing or
    alignment carry no median.  Rows come back ordered by threshold.
    """
    if not thresholds_ns:
        raise ConfigError("thresholds_ns must be nonempty")
    if any(t < 0 for t in thresholds_ns):
        raise ConfigError("thresholds must be >= 0")

    trial_groups = group_by_trial(records) if records else None
    rows = []
    for threshold in sorted(thresholds_ns):
        filtered = glitch_filter(capture, threshold)
        outcome = pair_edges(filtered, expected_count=expected_count)
        median = None
        status = outcome.status
        if status == "pass" and trial_groups:
            segments = segment_trials(outcome.pairs, gap_threshold_ns)
            try:
                aligned = align(trial_groups, segments, warmup_exclude)
            except AlignmentError:
                status = "fail"
            else:
                deltas = [
                    d
                    for trial in aligned
                    for d in compute_deltas(trial, convention).deltas_ns
                ]
                if deltas:
                    median = float(statistics.median(deltas))
        rows.append(
            SweepRow(
                threshold_ns=threshold,
                pair_count=outcome.pair_count,
                status=status,
                median_delta_ns=median,
            )
        )
    return rows


def profile_summary(
    samples: list[ProfileSample], warmup_exclude: int = DEFAULT_PROFILE_WARMUP
) -> tuple[float, float, float]:
    """(med(H), med(L), med(H+L)) over post-warmup samples, in nanoseconds.

    med(H+L) is the median of per-iteration sums, not med(H) + med(L); the
    per-iteration sum is what one high+low call round actually costs.
    """
    if warmup_exclude < 0:
        raise ConfigError("warmup_exclude must be >= 0")
    effective = samples[warmup_exclude:]
    if len(effective) < 2:
        raise ConfigError(
            f"insufficient samples: {len(samples)} total, {len(effective)} after "
            f"excluding {warmup_exclude} warm-up iterations (need >= 2)"
        )
    med_high = statistics.median(s.high_ns for s in effective)
    med_low = statistics.median(s.low_ns for s in effective)
    med_sum = statistics.median(s.high_ns + s.low_ns for s in effective)
    return float(med_high), float(med_low), float(med_sum)


def profile_compare(
    summary: tuple[float, float, float], c_p_ns: float
) -> ProfileComparison:
    """Compare a profile summary against a platform constant's magnitude."""
    if c_p_ns == 0:
        raise ConfigError("profile_compare requires a nonzero platform constant")
    med_high, med_low, med_sum = summary
    c_p_abs = abs(c_p_ns)
    residual = med_sum - c_p_abs
    return ProfileComparison(
        med_high_ns=med_high,
        med_low_ns=med_low,
        med_sum_ns=med_sum,
        c_p_abs_ns=c_p_abs,
        coverage_ratio=med_sum / c_p_abs,
        residual_ns=residual,
        over_prediction_fraction=residual / c_p_abs,
    )
