"""Validation gates over residual series.

Two modes: platform_aware tests |delta - C_p| <= tau against the calibrated
platform constant; uniform_raw tests |delta| <= tau directly.  The gate
statistic is either each trial's median (default, matching how constants are
derived) or every individual inference (for fault detection).
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass

from wirecal.errors import ConfigError
from wirecal.residual import ResidualSeries

PLATFORM_AWARE = "platform_aware"
UNIFORM_RAW = "uniform_raw"
MODES = (PLATFORM_AWARE, UNIFORM_RAW)

TRIAL_MEDIAN = "trial_median"
PER_INFERENCE = "per_inference"
STATISTICS = (TRIAL_MEDIAN, PER_INFERENCE)


@dataclass(frozen=True)
class GateConfig:
    mode: str = PLATFORM_AWARE
    tolerance_ns: float = 0.0
    constant_ns: float | None = None
    statistic: str = TRIAL_MEDIAN

    def __post_init__(self):
        if self.mode not in MODES:
            raise ConfigError(f"gate mode must be one of {MODES}, got {self.mode!r}")
        if self.statistic not in STATISTICS:
            raise ConfigError(
                f"gate statistic must be one of {STATISTICS}, got {self.statistic!r}"
            )
        if self.tolerance_ns < 0:
            raise ConfigError("tolerance_ns must be >= 0")
        if self.mode == PLATFORM_AWARE and self.constant_ns is None:
            raise ConfigError("platform_aware mode requires constant_ns")


@dataclass(frozen=True)
class GateVerdict:
    """accepted iff every evaluated statistic satisfies its bound.

    worst_residual_ns is the signed residual of largest magnitude;
    failing_fraction is reported even when accepted so trends can be watched
    before they become rejections.
    """

    accepted: bool
    worst_residual_ns: float
    failing_fraction: float
    reason: str

    @property
    def margin_ns(self) -> float:
        """Headroom left under the tolerance (negative when rejected)."""
        return self._tolerance_ns - abs(self.worst_residual_ns)

    # margin needs the tolerance; stored privately to keep the verdict small
    _tolerance_ns: float = 0.0


def evaluate_gate(series: list[ResidualSeries], config: GateConfig) -> GateVerdict:
    """Evaluate the configured gate over one platform's residual series."""
    if not series:
        raise ConfigError("evaluate_gate requires at least one residual series")
    constant = config.constant_ns if config.mode == PLATFORM_AWARE else 0.0

    if config.statistic == TRIAL_MEDIAN:
        values = [statistics.median(s.deltas_ns) for s in series if s.deltas_ns]
        unit = "trial median"
    else:
        values = [d for s in series for d in s.deltas_ns]
        unit = "inference"
    if not values:
        raise ConfigError("evaluate_gate requires nonempty residual series")

    residuals = [v - constant for v in values]
    worst = max(residuals, key=abs)
    failing = sum(1 for r in residuals if abs(r) > config.tolerance_ns)
    accepted = failing == 0
    tol_us = config.tolerance_ns / 1000
    if accepted:
        reason = f"all {len(values)} {unit}s within tolerance {tol_us:.2f} us"
    else:
        reason = (
            f"{failing}/{len(values)} {unit}s exceed tolerance {tol_us:.2f} us "
            f"(worst residual {worst / 1000:.2f} us)"
        )
    return GateVerdict(
        accepted=accepted,
        worst_residual_ns=float(worst),
        failing_fraction=failing / len(values),
        reason=reason,
        _tolerance_ns=config.tolerance_ns,
    )


@dataclass(frozen=True)
class GateComparison:
    """Four-cell uniform vs platform-aware comparison across two platforms."""

    tau_ns: float
    cells: tuple[tuple[str, str, GateVerdict], ...]  # (mode, platform, verdict)

    def verdict(self, mode: str, platform: str) -> GateVerdict:
        for m, p, v in self.cells:
            if m == mode and p == platform:
                return v
        raise KeyError((mode, platform))


def gate_comparison(
    jetson_series: list[ResidualSeries],
    pi_series: list[ResidualSeries],
    tau_ns: float,
    constants_ns: dict[str, float],
    statistic: str = TRIAL_MEDIAN,
) -> GateComparison:
    """Evaluate uniform and platform-aware gates on both platforms at one tau.

    constants_ns maps platform name ("jetson", "pi") to its calibrated
    constant.  The resulting table demonstrates whether a single tau applied
    to raw residuals can bind both platforms at once.
    """
    datasets = {"jetson": jetson_series, "pi": pi_series}
    cells = []
    for mode in (UNIFORM_RAW, PLATFORM_AWARE):
        for platform, series in datasets.items():
            config = GateConfig(
                mode=mode,
                tolerance_ns=tau_ns,
                constant_ns=constants_ns[platform] if mode == PLATFORM_AWARE else None,
                statistic=statistic,
            )
            cells.append((mode, platform, evaluate_gate(series, config)))
    return GateComparison(tau_ns=tau_ns, cells=tuple(cells))
