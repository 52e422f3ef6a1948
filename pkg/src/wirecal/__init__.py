"""wirecal: hardware-validated inference timing calibration.

Pairs logic-analyzer wire edges with software-clock intervals to measure
the systematic instrumentation bias of a platform's timing chain, then
evaluates platform-aware validation gates, glitch-filter sensitivity
sweeps, direct GPIO profile comparisons, and cross-session drift.

Typical flow::

    capture = parse_edge_capture("capture.csv")
    records = parse_orchestrator_log("orchestrator.jsonl")
    outcome = pair_edges(glitch_filter(capture, 100), expected_count=len(records))
    trials  = align(group_by_trial(records), segment_trials(outcome.pairs))
    stats   = [trial_stats(compute_deltas(t)) for t in trials]
    cal     = platform_constant(stats, OperatingStateTag("jetson", "S1"))

A deterministic synthetic generator (wirecal.synth, wirecal.scenarios)
produces matched capture/log/profile file sets with known constants for
end-to-end verification, glitch injection, and fault injection.
"""

__version__ = "0.1.0"

from wirecal.errors import (
    AlignmentError,
    ConfigError,
    ParseError,
    QuantizationWarning,
    StoreConflictError,
    WirecalError,
)
from wirecal.ingest import (
    EdgeCapture,
    EdgeEvent,
    InferenceRecord,
    OperatingStateTag,
    ProfileSample,
    group_by_trial,
    parse_edge_capture,
    parse_orchestrator_log,
    parse_profile_log,
    write_edge_capture,
    write_orchestrator_log,
    write_profile_log,
)
from wirecal.pulse import (
    AlignedTrial,
    PairingOutcome,
    PulsePair,
    align,
    glitch_filter,
    pair_edges,
    segment_trials,
)
from wirecal.residual import (
    PlatformCalibration,
    ResidualSeries,
    TrialStats,
    compute_deltas,
    derive_tolerance,
    platform_constant,
    trial_stats,
)
from wirecal.gate import (
    GateComparison,
    GateConfig,
    GateVerdict,
    evaluate_gate,
    gate_comparison,
)
from wirecal.sensitivity import (
    DEFAULT_SWEEP_THRESHOLDS_NS,
    ProfileComparison,
    SweepRow,
    filter_sweep,
    profile_compare,
    profile_summary,
)
from wirecal.store import CalibrationStore, DriftReport, SessionEntry
from wirecal.synth import (
    DurationSpec,
    FaultSpec,
    GlitchSpec,
    SynthConfig,
    SynthDataset,
    SynthScenario,
    build_dataset,
    generate_dataset,
    generate_profile,
    generate_trial,
    inject_glitches,
)
from wirecal.scenarios import (
    BUILTIN_SCENARIO_NAMES,
    builtin_scenario,
    load_scenario,
    resolve_scenario,
    save_scenario,
)
