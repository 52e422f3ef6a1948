"""Deterministic synthetic dataset generator: the toolkit's end-to-end oracle.

Generates matched orchestrator logs, edge captures, and profile logs from a
configurable overhead model.  Per inference the generator draws a high-call
duration H, an inference duration D, and a low-call duration L, lays out the
four software timestamps

    t0, t1 = t0 + H, t2 = t1 + D, t3 = t2 + L

and places the wire edges inside their call windows:

    rise = t0 + alpha * H      (alpha in [0, 1], jittered, clamped)
    fall = t2 + beta * L       (beta  in [0, 1], jittered, clamped)

then snaps both to the analyzer sample grid without leaving the window.
Containment (rise in [t0, t1], fall in [t2, t3]) therefore holds for every
generated inference, which forces outer-convention residuals <= 0 and
|delta| <= H + L regardless of the distribution parameters.

Edge placement is parameterized by fractions rather than asserting a driver
mechanism; profiles matching observed hardware use alpha near 1 and beta
near 0, the placement family that reproduces |delta| close to H + L.

Everything is driven by one seed: identical (config, seed) produce
byte-identical file sets.  Glitch injection (spurious edges) and fault
injection (stuck-high line, constant width offsets) are layered on top for
testing the downstream filter, pairing, and gate logic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from wirecal.errors import ConfigError
from wirecal.ingest import (
    FALLING,
    RISING,
    EdgeCapture,
    EdgeEvent,
    InferenceRecord,
    ProfileSample,
    write_edge_capture,
    write_orchestrator_log,
    write_profile_log,
)

CONSTANT = "constant"
UNIFORM = "uniform"
LOGNORMAL = "lognormal"
OUTLIER_MIXTURE = "outlier_mixture"
DIST_KINDS = (CONSTANT, UNIFORM, LOGNORMAL, OUTLIER_MIXTURE)

LOW_PERIOD_PULSE = "low_period_pulse"
SAME_DIRECTION_EDGE = "same_direction_edge"
GLITCH_PLACEMENTS = (LOW_PERIOD_PULSE, SAME_DIRECTION_EDGE)

STUCK_HIGH = "stuck_high"
DELTA_OFFSET = "delta_offset"
FAULT_KINDS = (STUCK_HIGH, DELTA_OFFSET)

# Glitch edges keep at least this much distance from real edges so that no
# sweep threshold up to 2000 ns can remove a real edge as collateral.
GLITCH_CLEARANCE_NS = 2_500
# Glitches are placed only inside intra-trial low periods, never in the
# much larger inter-trial gaps (which would break trial segmentation).
MAX_GLITCH_GAP_NS = 10_000_000


@dataclass(frozen=True)
class DurationSpec:
    """Distribution of one duration, with optional per-trial modulation.

    kind / spread_ns semantics:
      constant         -- always median_ns; spread ignored.
      uniform          -- median_ns + U(-spread_ns, +spread_ns).
      lognormal        -- median_ns * exp(N(0, spread)); spread is the
                          dimensionless log-sigma for this kind.
      outlier_mixture  -- median_ns with probability 1 - outlier_prob, else
                          median_ns + U(-spread_ns, +spread_ns).  Models a
                          mostly-quiet duration with infrequent preemption
                          outliers; the population median stays pinned at
                          median_ns as long as outlier_prob < 0.5.

    Per-trial modulation (both drawn once per trial before sampling):
      trial_median_jitter_ns -- the trial's median is median_ns + U(-j, +j).
      trial_spread_range_ns  -- the trial's spread is U(lo, hi).
    """

    kind: str
    median_ns: float
    spread_ns: float = 0.0
    outlier_prob: float = 0.3
    trial_median_jitter_ns: float = 0.0
    trial_spread_range_ns: tuple[float, float] | None = None

    def __post_init__(self):
        if self.kind not in DIST_KINDS:
            raise ConfigError(f"duration kind must be one of {DIST_KINDS}, got {self.kind!r}")
        if self.median_ns <= 0:
            raise ConfigError("median_ns must be positive")
        if self.spread_ns < 0 or self.trial_median_jitter_ns < 0:
            raise ConfigError("spreads and jitters must be >= 0")
        if not 0 <= self.outlier_prob < 0.5:
            raise ConfigError("outlier_prob must be in [0, 0.5) to keep the median pinned")

    def sample_trial(self, rng: np.random.Generator, n: int) -> np.ndarray:
        """Draw n values for one trial; consumes trial modulators first."""
        median = self.median_ns
        if self.trial_median_jitter_ns > 0:
            j = self.trial_median_jitter_ns
            median = median + rng.uniform(-j, j)
        spread = self.spread_ns
        if self.trial_spread_range_ns is not None:
            lo, hi = self.trial_spread_range_ns
            spread = rng.uniform(lo, hi)

        if self.kind == CONSTANT:
            values = np.full(n, median)
        elif self.kind == UNIFORM:
            values = median + rng.uniform(-spread, spread, n)
        elif self.kind == LOGNORMAL:
            values = median * np.exp(rng.normal(0.0, spread, n))
        else:  # OUTLIER_MIXTURE
            outliers = rng.random(n) < self.outlier_prob
            offsets = rng.uniform(-spread, spread, n)
            values = median + np.where(outliers, offsets, 0.0)
        return np.maximum(np.rint(values).astype(np.int64), 1)


@dataclass(frozen=True)
class GlitchSpec:
    """Spurious edges to inject below the real dwell scale.

    low_period_pulse inserts `count` rise/fall pairs of width dwell_ns into
    distinct low periods (each adds one extra pair when unfiltered).
    same_direction_edge inserts `count` single rising edges into low periods,
    each creating a strict-ordering violation; edges are placed
    pairwise-adjacent (dwell_ns apart) so that a filter above dwell_ns
    removes a whole pair cleanly -- the dwell filter always removes two
    edges at a time, so an isolated spurious edge cannot be filtered out
    without taking a real edge with it.
    """

    count: int
    dwell_ns: int
    placement: str

    def __post_init__(self):
        if self.count <= 0:
            raise ConfigError("glitch count must be positive")
        if self.dwell_ns <= 0:
            raise ConfigError("glitch dwell must be positive")
        if self.placement not in GLITCH_PLACEMENTS:
            raise ConfigError(
                f"glitch placement must be one of {GLITCH_PLACEMENTS}, got {self.placement!r}"
            )


@dataclass(frozen=True)
class FaultSpec:
    """A measurement-chain fault to inject.

    stuck_high: one inference's falling edge never occurs and the line stays
    high until just before the next trial gap; the affected trial's pulse
    count no longer matches its record count, surfacing as an alignment
    failure.  delta_offset: offset_ns is added to every pulse width (falls
    are shifted), corrupting residuals while keeping alignment intact.
    """

    kind: str
    offset_ns: int = 0
    trial_index: int | None = None
    inference_index: int | None = None

    def __post_init__(self):
        if self.kind not in FAULT_KINDS:
            raise ConfigError(f"fault kind must be one of {FAULT_KINDS}, got {self.kind!r}")


@dataclass(frozen=True)
class SynthConfig:
    trials: int
    inferences_per_trial: int
    duration_ns: DurationSpec
    high_call_ns: DurationSpec
    low_call_ns: DurationSpec
    loop_gap_ns: DurationSpec
    rise_fraction: float = 1.0
    rise_jitter: float = 0.0
    fall_fraction: float = 0.0
    fall_jitter: float = 0.0
    sample_rate_hz: int = 100_000_000
    inter_trial_gap_ns: int = 5_000_000_000
    start_ns: int = 1_000_000
    seed: int = 0
    glitch_specs: tuple[GlitchSpec, ...] = ()
    fault: FaultSpec | None = None
    profile_high_ns: DurationSpec | None = None
    profile_low_ns: DurationSpec | None = None
    profile_pattern_ns: tuple[tuple[int, int], ...] | None = None
    profile_samples: int = 5000
    profile_warmup: int = 20

    def __post_init__(self):
        if self.trials <= 0 or self.inferences_per_trial <= 0:
            raise ConfigError("trials and inferences_per_trial must be positive")
        for name in ("rise_fraction", "fall_fraction"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ConfigError(f"{name} must be in [0, 1], got {value}")
        if self.rise_jitter < 0 or self.fall_jitter < 0:
            raise ConfigError("fraction jitters must be >= 0")
        if self.sample_rate_hz <= 0:
            raise ConfigError("sample_rate_hz must be positive")
        if self.inter_trial_gap_ns <= 0:
            raise ConfigError("inter_trial_gap_ns must be positive")
        if self.profile_samples <= 0 or self.profile_warmup < 0:
            raise ConfigError("profile_samples must be positive, profile_warmup >= 0")

    @property
    def quantum_ns(self) -> int:
        return max(1, round(1e9 / self.sample_rate_hz))


@dataclass(frozen=True)
class SynthScenario:
    """A named config plus the expectations it was constructed to satisfy."""

    name: str
    config: SynthConfig
    expected: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SynthDataset:
    """In-memory dataset: records, capture, and profile from one scenario."""

    scenario: SynthScenario
    records: tuple[InferenceRecord, ...]
    capture: EdgeCapture
    profile: tuple[ProfileSample, ...]


# ---------------------------------------------------------------------------
# grid helpers
# ---------------------------------------------------------------------------


def _floor_grid(x: int, q: int) -> int:
    return (x // q) * q


def _ceil_grid(x: int, q: int) -> int:
    return -((-x) // q) * q


def _round_grid(x: float, q: int) -> int:
    return int(round(x / q)) * q


def _quantize_into(raw: float, lo: int, hi: int, q: int) -> int:
    """Nearest grid point to raw, clamped into [lo, hi].

    Falls back to a plain (off-grid) clamp when the window is narrower than
    one grid step, preserving containment over grid alignment.
    """
    lo_g, hi_g = _ceil_grid(lo, q), _floor_grid(hi, q)
    if lo_g > hi_g:
        return min(max(int(round(raw)), lo), hi)
    return min(max(_round_grid(raw, q), lo_g), hi_g)


def _trial_rng(config: SynthConfig, trial_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(0, trial_index)))


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------


def generate_trial(
    config: SynthConfig, trial_index: int
) -> tuple[list[InferenceRecord], list[EdgeEvent]]:
    """Generate one trial's records and edge events, times relative to trial start.

    The draw order per trial is fixed (H, D, L, loop gap, rise jitter, fall
    jitter) so a trial is reproducible from (seed, trial_index) alone.
    """
    if not 0 <= trial_index < config.trials:
        raise ConfigError(f"trial_index {trial_index} out of range for {config.trials} trials")
    rng = _trial_rng(config, trial_index)
    n = config.inferences_per_trial
    q = config.quantum_ns

    highs = config.high_call_ns.sample_trial(rng, n)
    durations = config.duration_ns.sample_trial(rng, n)
    lows = config.low_call_ns.sample_trial(rng, n)
    gaps = config.loop_gap_ns.sample_trial(rng, n)

    alphas = np.full(n, config.rise_fraction)
    if config.rise_jitter:
        alphas = np.clip(
            alphas + rng.uniform(-config.rise_jitter, config.rise_jitter, n), 0.0, 1.0
        )
    betas = np.full(n, config.fall_fraction)
    if config.fall_jitter:
        betas = np.clip(
            betas + rng.uniform(-config.fall_jitter, config.fall_jitter, n), 0.0, 1.0
        )

    blocks = highs + durations + lows + gaps
    t0 = np.concatenate(([0], np.cumsum(blocks)[:-1]))
    t1 = t0 + highs
    t2 = t1 + durations
    t3 = t2 + lows

    trial_id = f"T{trial_index + 1:02d}"
    records = [
        InferenceRecord(trial_id, i, int(t0[i]), int(t1[i]), int(t2[i]), int(t3[i]))
        for i in range(n)
    ]
    events = []
    for i in range(n):
        rise = _quantize_into(t0[i] + alphas[i] * highs[i], int(t0[i]), int(t1[i]), q)
        fall = _quantize_into(t2[i] + betas[i] * lows[i], int(t2[i]), int(t3[i]), q)
        events.append(EdgeEvent(rise, RISING))
        events.append(EdgeEvent(fall, FALLING))
    return records, events


def _shift_events(events, offset):
    return [EdgeEvent(e.timestamp_ns + offset, e.direction) for e in events]


def _apply_stuck_high(trial_events, records, fault, quantum):
    """Drop everything after the stuck inference's rise; one late fall remains."""
    n = len(records)
    index = fault.inference_index if fault.inference_index is not None else n // 2
    if not 0 <= index < n:
        raise ConfigError(f"stuck_high inference_index {index} out of range")
    cut = 2 * index + 1  # keep this inference's rise, drop its fall and the rest
    kept = trial_events[:cut]
    release = _ceil_grid(records[-1].t3_ns + 1_000_000, quantum)
    kept.append(EdgeEvent(release, FALLING))
    return kept


def inject_glitches(
    events: list[EdgeEvent],
    glitch_specs,
    seed: int,
    sample_rate_hz: int = 100_000_000,
) -> list[EdgeEvent]:
    """Insert spurious edges into low periods, seeded-deterministically.

    Each spec's dwell must sit below the smallest real dwell in the capture;
    a spec that cannot be placed without crowding real edges is an error.
    Same-direction edges go in pairwise-adjacent (see GlitchSpec); an odd
    count leaves one isolated edge that no dwell filter can remove cleanly.
    """
    specs = list(glitch_specs) if not isinstance(glitch_specs, GlitchSpec) else [glitch_specs]
    if not specs:
        return list(events)
    quantum = max(1, round(1e9 / sample_rate_hz))
    min_real_dwell = min(
        (b.timestamp_ns - a.timestamp_ns for a, b in zip(events, events[1:])),
        default=None,
    )
    for spec in specs:
        if min_real_dwell is not None and spec.dwell_ns >= min_real_dwell:
            raise ConfigError(
                f"glitch dwell {spec.dwell_ns} ns must be below the smallest real dwell "
                f"({min_real_dwell} ns)"
            )

    # Candidate insertion sites: intra-trial low periods with clearance room.
    candidates = []
    for i, (a, b) in enumerate(zip(events, events[1:])):
        if a.direction == FALLING and b.direction == RISING:
            length = b.timestamp_ns - a.timestamp_ns
            if length <= MAX_GLITCH_GAP_NS:
                candidates.append((a.timestamp_ns, b.timestamp_ns))

    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(1,)))
    insertions = []  # lists of EdgeEvent per site
    for spec in specs:
        if spec.placement == LOW_PERIOD_PULSE:
            groups = [(spec.dwell_ns, (RISING, FALLING))] * spec.count
        else:
            pairs, leftover = divmod(spec.count, 2)
            groups = [(spec.dwell_ns, (RISING, RISING))] * pairs
            if leftover:
                groups.append((0, (RISING,)))
        for dwell, directions in groups:
            needed = 2 * GLITCH_CLEARANCE_NS + dwell
            usable = [c for c in candidates if c[1] - c[0] > needed]
            if not usable:
                raise ConfigError(
                    f"no low period can host a {spec.placement} glitch of dwell "
                    f"{spec.dwell_ns} ns without overlapping real edges"
                )
            site = usable[int(rng.integers(len(usable)))]
            candidates.remove(site)
            start = _round_grid((site[0] + site[1] - dwell) / 2, quantum)
            start = max(start, site[0] + GLITCH_CLEARANCE_NS)
            insertions.append(
                [EdgeEvent(start + k * dwell, d) for k, d in enumerate(directions)]
            )

    merged = list(events)
    for group in insertions:
        merged.extend(group)
    merged.sort(key=lambda e: e.timestamp_ns)
    return merged


def generate_profile(config: SynthConfig) -> list[ProfileSample]:
    """Tight-loop call-duration samples; the first profile_warmup are warm-up.

    profile_pattern_ns, when set, cycles fixed (high, low) tuples by
    iteration index: high and low then co-vary within an iteration, so the
    median of per-iteration sums need not equal the sum of the two medians.
    Otherwise samples come from the dedicated profile distributions, falling
    back to the measurement-context call distributions -- the two need not
    agree, and on real hardware they do not.
    """
    n = config.profile_samples
    if config.profile_pattern_ns:
        pattern = config.profile_pattern_ns
        return [
            ProfileSample(i, int(pattern[i % len(pattern)][0]), int(pattern[i % len(pattern)][1]))
            for i in range(n)
        ]
    rng = np.random.default_rng(np.random.SeedSequence(config.seed, spawn_key=(3,)))
    high_spec = config.profile_high_ns or config.high_call_ns
    low_spec = config.profile_low_ns or config.low_call_ns
    highs = high_spec.sample_trial(rng, n)
    lows = low_spec.sample_trial(rng, n)
    return [ProfileSample(i, int(highs[i]), int(lows[i])) for i in range(n)]


def build_dataset(scenario: SynthScenario) -> SynthDataset:
    """Assemble all trials into one capture plus records and profile."""
    config = scenario.config
    records: list[InferenceRecord] = []
    events: list[EdgeEvent] = []
    # Trial offsets land on the sample grid so that per-trial quantized edge
    # times stay grid-aligned after shifting into the capture timeline.
    offset = _ceil_grid(config.start_ns, config.quantum_ns)
    for trial_index in range(config.trials):
        trial_records, trial_events = generate_trial(config, trial_index)
        trial_records = [
            InferenceRecord(
                r.trial_id,
                r.index,
                r.t0_ns + offset,
                r.t1_ns + offset,
                r.t2_ns + offset,
                r.t3_ns + offset,
            )
            for r in trial_records
        ]
        trial_events = _shift_events(trial_events, offset)
        if config.fault and config.fault.kind == STUCK_HIGH:
            target = (
                config.fault.trial_index
                if config.fault.trial_index is not None
                else config.trials // 2
            )
            if trial_index == target:
                trial_events = _apply_stuck_high(
                    trial_events, trial_records, config.fault, config.quantum_ns
                )
        records.extend(trial_records)
        events.extend(trial_events)
        offset = _ceil_grid(
            trial_records[-1].t3_ns + config.inter_trial_gap_ns, config.quantum_ns
        )

    if config.fault and config.fault.kind == DELTA_OFFSET:
        events = [
            EdgeEvent(e.timestamp_ns + config.fault.offset_ns, e.direction)
            if e.direction == FALLING
            else e
            for e in events
        ]
        events.sort(key=lambda e: e.timestamp_ns)

    if config.glitch_specs:
        events = inject_glitches(
            events, config.glitch_specs, config.seed, config.sample_rate_hz
        )

    capture = EdgeCapture(
        events=tuple(events),
        sample_rate_hz=config.sample_rate_hz,
        source_id=scenario.name,
    )
    return SynthDataset(
        scenario=scenario,
        records=tuple(records),
        capture=capture,
        profile=tuple(generate_profile(config)),
    )


DATASET_FILES = {
    "capture": "capture.csv",
    "orchestrator_log": "orchestrator.jsonl",
    "profile_log": "profile.jsonl",
    "manifest": "manifest.json",
}


def generate_dataset(scenario: SynthScenario, out_dir) -> dict[str, Path]:
    """Write the full file set for a scenario; byte-identical under one seed.

    Emits the capture (native CSV), orchestrator log, profile log, and a
    manifest restating the scenario's configuration and expectations.  The
    manifest carries no wall-clock fields, so reruns compare equal.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    dataset = build_dataset(scenario)
    paths = {key: out / name for key, name in DATASET_FILES.items()}
    write_edge_capture(dataset.capture, paths["capture"])
    write_orchestrator_log(list(dataset.records), paths["orchestrator_log"])
    write_profile_log(list(dataset.profile), paths["profile_log"])
    manifest = {
        "scenario": scenario.name,
        "seed": scenario.config.seed,
        "config": config_to_doc(scenario.config),
        "expected": scenario.expected,
        "files": {key: name for key, name in DATASET_FILES.items() if key != "manifest"},
    }
    paths["manifest"].write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return paths


# ---------------------------------------------------------------------------
# config (de)serialization for scenario files and manifests
# ---------------------------------------------------------------------------


def _spec_to_doc(spec: DurationSpec | None):
    if spec is None:
        return None
    doc = {"kind": spec.kind, "median_ns": spec.median_ns}
    if spec.spread_ns:
        doc["spread_ns"] = spec.spread_ns
    if spec.kind == OUTLIER_MIXTURE:
        doc["outlier_prob"] = spec.outlier_prob
    if spec.trial_median_jitter_ns:
        doc["trial_median_jitter_ns"] = spec.trial_median_jitter_ns
    if spec.trial_spread_range_ns is not None:
        doc["trial_spread_range_ns"] = list(spec.trial_spread_range_ns)
    return doc


def _spec_from_doc(doc) -> DurationSpec | None:
    if doc is None:
        return None
    kwargs = dict(doc)
    if "trial_spread_range_ns" in kwargs and kwargs["trial_spread_range_ns"] is not None:
        kwargs["trial_spread_range_ns"] = tuple(kwargs["trial_spread_range_ns"])
    return DurationSpec(**kwargs)


def config_to_doc(config: SynthConfig) -> dict:
    return {
        "trials": config.trials,
        "inferences_per_trial": config.inferences_per_trial,
        "duration_ns": _spec_to_doc(config.duration_ns),
        "high_call_ns": _spec_to_doc(config.high_call_ns),
        "low_call_ns": _spec_to_doc(config.low_call_ns),
        "loop_gap_ns": _spec_to_doc(config.loop_gap_ns),
        "rise_fraction": config.rise_fraction,
        "rise_jitter": config.rise_jitter,
        "fall_fraction": config.fall_fraction,
        "fall_jitter": config.fall_jitter,
        "sample_rate_hz": config.sample_rate_hz,
        "inter_trial_gap_ns": config.inter_trial_gap_ns,
        "start_ns": config.start_ns,
        "seed": config.seed,
        "glitch_specs": [
            {"count": g.count, "dwell_ns": g.dwell_ns, "placement": g.placement}
            for g in config.glitch_specs
        ],
        "fault": (
            {
                "kind": config.fault.kind,
                "offset_ns": config.fault.offset_ns,
                "trial_index": config.fault.trial_index,
                "inference_index": config.fault.inference_index,
            }
            if config.fault
            else None
        ),
        "profile_high_ns": _spec_to_doc(config.profile_high_ns),
        "profile_low_ns": _spec_to_doc(config.profile_low_ns),
        "profile_pattern_ns": (
            [list(p) for p in config.profile_pattern_ns] if config.profile_pattern_ns else None
        ),
        "profile_samples": config.profile_samples,
        "profile_warmup": config.profile_warmup,
    }


def config_from_doc(doc: dict) -> SynthConfig:
    fault_doc = doc.get("fault")
    return SynthConfig(
        trials=doc["trials"],
        inferences_per_trial=doc["inferences_per_trial"],
        duration_ns=_spec_from_doc(doc["duration_ns"]),
        high_call_ns=_spec_from_doc(doc["high_call_ns"]),
        low_call_ns=_spec_from_doc(doc["low_call_ns"]),
        loop_gap_ns=_spec_from_doc(doc["loop_gap_ns"]),
        rise_fraction=doc.get("rise_fraction", 1.0),
        rise_jitter=doc.get("rise_jitter", 0.0),
        fall_fraction=doc.get("fall_fraction", 0.0),
        fall_jitter=doc.get("fall_jitter", 0.0),
        sample_rate_hz=doc.get("sample_rate_hz", 100_000_000),
        inter_trial_gap_ns=doc.get("inter_trial_gap_ns", 5_000_000_000),
        start_ns=doc.get("start_ns", 1_000_000),
        seed=doc.get("seed", 0),
        glitch_specs=tuple(
            GlitchSpec(g["count"], g["dwell_ns"], g["placement"])
            for g in doc.get("glitch_specs", [])
        ),
        fault=(
            FaultSpec(
                kind=fault_doc["kind"],
                offset_ns=fault_doc.get("offset_ns", 0),
                trial_index=fault_doc.get("trial_index"),
                inference_index=fault_doc.get("inference_index"),
            )
            if fault_doc
            else None
        ),
        profile_high_ns=_spec_from_doc(doc.get("profile_high_ns")),
        profile_low_ns=_spec_from_doc(doc.get("profile_low_ns")),
        profile_pattern_ns=(
            tuple(tuple(p) for p in doc["profile_pattern_ns"])
            if doc.get("profile_pattern_ns")
            else None
        ),
        profile_samples=doc.get("profile_samples", 5000),
        profile_warmup=doc.get("profile_warmup", 20),
    )


def with_seed(scenario: SynthScenario, seed: int) -> SynthScenario:
    """Same scenario with a different seed (expectations kept)."""
    return replace(scenario, config=replace(scenario.config, seed=seed))
