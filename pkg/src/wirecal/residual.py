"""Wire-vs-clock residuals and per-platform calibration constants.

For each inference the residual is

    delta = width_ns - P

where width_ns is the wire pulse width and P is the software-clock interval:
t3 - t0 under the "outer" convention (the full bracketing interval) or
t2 - t1 under "inner" (the inference-only interval).  The wire edges land
inside their GPIO call windows, so outer-convention deltas are nonpositive
and bounded in magnitude by the sum of the two call durations.

A platform constant is the mean of per-trial medians of delta: the median
absorbs per-inference outliers such as infrequent preemption events, the
mean preserves cross-trial information.  All delta arithmetic is exact
integer nanoseconds; medians are exact integers or half-integers.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from wirecal.errors import ConfigError
from wirecal.ingest import OperatingStateTag
from wirecal.pulse import AlignedTrial

OUTER = "outer"
INNER = "inner"
CONVENTIONS = (OUTER, INNER)

DEFAULT_K_FACTOR = 2.5


@dataclass(frozen=True)
class ResidualSeries:
    """Signed per-inference residuals for one trial (post-warmup only)."""

    trial_id: str
    deltas_ns: tuple[int, ...]
    perf_convention: str = OUTER


@dataclass(frozen=True)
class TrialStats:
    """Per-trial residual summary; sample_std_ns is None for n < 2."""

    trial_id: str
    median_ns: float
    sample_std_ns: float | None
    min_ns: int
    max_ns: int
    n: int


@dataclass(frozen=True)
class PlatformCalibration:
    """Per-platform constant with the trial evidence behind it.

    tolerance_ns is k_factor times the worst within-trial standard deviation
    when derived; an explicit override replaces the derivation.
    """

    platform: OperatingStateTag
    c_p_ns: float
    trial_medians_ns: tuple[float, ...]
    std_range_ns: tuple[float, float] | None
    n_trials: int
    tolerance_ns: float | None
    k_factor: float


def compute_deltas(trial: AlignedTrial, convention: str = OUTER) -> ResidualSeries:
    """Residual series for one aligned trial under the given convention."""
    if convention not in CONVENTIONS:
        raise ConfigError(f"perf convention must be one of {CONVENTIONS}, got {convention!r}")
    deltas = []
    for record, pair in trial.effective_items:
        interval = record.outer_ns if convention == OUTER else record.inner_ns
        deltas.append(pair.width_ns - interval)
    return ResidualSeries(
        trial_id=trial.trial_id, deltas_ns=tuple(deltas), perf_convention=convention
    )


def trial_stats(series: ResidualSeries) -> TrialStats:
    """Median (midpoint rule for even n), sample std (n-1), and extremes."""
    if not series.deltas_ns:
        raise ConfigError(f"trial {series.trial_id}: empty residual series")
    deltas = series.deltas_ns
    std = statistics.stdev(deltas) if len(deltas) >= 2 else None
    return TrialStats(
        trial_id=series.trial_id,
        median_ns=statistics.median(deltas),
        sample_std_ns=std,
        min_ns=min(deltas),
        max_ns=max(deltas),
        n=len(deltas),
    )


def platform_constant(
    stats: list[TrialStats],
    tag: OperatingStateTag,
    k: float = DEFAULT_K_FACTOR,
    tolerance_ns: float | None = None,
) -> PlatformCalibration:
    """Mean of per-trial medians, with std range and derived tolerance.

    Trial order does not affect the constant (the mean is permutation
    invariant); the input order is kept for the medians list so reports are
    stable.  tolerance_ns overrides the k * worst-std derivation when given.
    """
    if not stats:
        raise ConfigError("platform_constant requires at least one trial")
    medians = tuple(float(s.median_ns) for s in stats)
    stds = [s.sample_std_ns for s in stats if s.sample_std_ns is not None]
    std_range = (min(stds), max(stds)) if stds else None
    if tolerance_ns is None and stds:
        tolerance_ns = derive_tolerance(stats, k)
    return PlatformCalibration(
        platform=tag,
        c_p_ns=sum(medians) / len(medians),
        trial_medians_ns=medians,
        std_range_ns=std_range,
        n_trials=len(stats),
        tolerance_ns=tolerance_ns,
        k_factor=k,
    )


def derive_tolerance(stats: list[TrialStats], k: float = DEFAULT_K_FACTOR) -> float:
    """Residual tolerance: k times the worst within-trial standard deviation."""
    if k <= 0:
        raise ConfigError("k must be positive")
    stds = [s.sample_std_ns for s in stats if s.sample_std_ns is not None]
    if not stds:
        raise ConfigError("derive_tolerance requires at least one trial with n >= 2")
    return k * max(stds)
