import dataclasses
import filecmp
import json
from pathlib import Path

import pytest

from wirecal.errors import ConfigError
from wirecal.ingest import FALLING, RISING, group_by_trial
from wirecal.pulse import align, glitch_filter, pair_edges, segment_trials
from wirecal.residual import compute_deltas
from wirecal.scenarios import (
    BUILTIN_SCENARIO_NAMES,
    builtin_scenario,
    load_scenario,
    resolve_scenario,
    save_scenario,
)
from wirecal.synth import (
    CONSTANT,
    LOW_PERIOD_PULSE,
    SAME_DIRECTION_EDGE,
    UNIFORM,
    DurationSpec,
    GlitchSpec,
    SynthConfig,
    SynthScenario,
    build_dataset,
    generate_dataset,
    generate_profile,
    generate_trial,
    inject_glitches,
)

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def simple_config(**overrides):
    base = dict(
        trials=2,
        inferences_per_trial=30,
        duration_ns=DurationSpec(CONSTANT, 1_200_000),
        high_call_ns=DurationSpec(CONSTANT, 10_000),
        low_call_ns=DurationSpec(CONSTANT, 8_000),
        loop_gap_ns=DurationSpec(CONSTANT, 50_000),
        seed=7,
    )
    base.update(overrides)
    return SynthConfig(**base)


def pipeline_deltas(dataset, filter_ns=0):
    capture = glitch_filter(dataset.capture, filter_ns) if filter_ns else dataset.capture
    outcome = pair_edges(capture, expected_count=len(dataset.records))
    assert outcome.status == "pass"
    aligned = align(group_by_trial(list(dataset.records)), segment_trials(outcome.pairs), 0)
    return [d for t in aligned for d in compute_deltas(t).deltas_ns]


def test_boundary_placement_gives_exact_constant_delta():
    # alpha=1, beta=0 with constant draws and a 1 ns grid: delta = -(H+L) exactly
    config = simple_config(sample_rate_hz=1_000_000_000)
    records, events = generate_trial(config, 0)
    assert len(records) == 30
    assert len(events) == 60
    dataset = build_dataset(SynthScenario("t", config))
    assert set(pipeline_deltas(dataset)) == {-18_000}


def test_zero_overhead_limit():
    config = simple_config(
        high_call_ns=DurationSpec(CONSTANT, 1),
        low_call_ns=DurationSpec(CONSTANT, 1),
        sample_rate_hz=1_000_000_000,
    )
    deltas = pipeline_deltas(build_dataset(SynthScenario("t", config)))
    assert set(deltas) <= {-2, -1, 0}


def test_rise_and_fall_stay_inside_call_windows():
    # jittered fractions and coarse grids must never break containment
    for seed in range(8):
        config = simple_config(
            duration_ns=DurationSpec(UNIFORM, 500_000, spread_ns=100_000),
            high_call_ns=DurationSpec(UNIFORM, 12_000, spread_ns=6_000),
            low_call_ns=DurationSpec(UNIFORM, 9_000, spread_ns=4_000),
            rise_fraction=0.6,
            rise_jitter=0.5,
            fall_fraction=0.4,
            fall_jitter=0.5,
            sample_rate_hz=25_000_000,
            seed=seed,
        )
        records, events = generate_trial(config, seed % 2)
        rises = [e.timestamp_ns for e in events if e.direction == RISING]
        falls = [e.timestamp_ns for e in events if e.direction == FALLING]
        for r, rise, fall in zip(records, rises, falls):
            assert r.t0_ns <= rise <= r.t1_ns
            assert r.t2_ns <= fall <= r.t3_ns


def test_events_stay_on_sample_grid():
    dataset = build_dataset(builtin_scenario("jetson-paper"))
    q = dataset.capture.quantum_ns
    assert q == 10
    assert all(e.timestamp_ns % q == 0 for e in dataset.capture.events)


def test_single_low_period_pulse_adds_two_edges_removed_above_dwell():
    config = simple_config()
    dataset = build_dataset(SynthScenario("t", config))
    clean = list(dataset.capture.events)
    glitched = inject_glitches(clean, [GlitchSpec(1, 40, LOW_PERIOD_PULSE)], seed=3)
    assert len(glitched) == len(clean) + 2
    cap = dataclasses.replace(dataset.capture, events=tuple(glitched))
    assert list(glitch_filter(cap, 41).events) == clean
    assert len(glitch_filter(cap, 40).events) == len(clean) + 2  # dwell == threshold survives


def test_zero_glitches_leaves_events_unchanged():
    config = simple_config()
    dataset = build_dataset(SynthScenario("t", config))
    assert inject_glitches(list(dataset.capture.events), [], seed=1) == list(dataset.capture.events)


def test_same_direction_pair_creates_violations_then_filters_clean():
    config = simple_config()
    dataset = build_dataset(SynthScenario("t", config))
    glitched = inject_glitches(
        list(dataset.capture.events), [GlitchSpec(2, 60, SAME_DIRECTION_EDGE)], seed=5
    )
    cap = dataclasses.replace(dataset.capture, events=tuple(glitched))
    raw = pair_edges(cap, expected_count=60)
    assert raw.status == "fail"
    assert raw.pair_count == 60  # same-direction edges add violations, not pairs
    assert len(raw.violations) == 2
    cleaned = pair_edges(glitch_filter(cap, 75), expected_count=60)
    assert cleaned.status == "pass"


def test_glitch_dwell_must_be_below_real_dwells():
    config = simple_config()
    dataset = build_dataset(SynthScenario("t", config))
    with pytest.raises(ConfigError, match="smallest real dwell"):
        inject_glitches(list(dataset.capture.events), [GlitchSpec(1, 100_000, LOW_PERIOD_PULSE)], seed=1)


def test_glitch_placement_without_room_errors():
    config = simple_config(inter_trial_gap_ns=20_000_000_000)
    dataset = build_dataset(SynthScenario("t", config))
    # low periods are ~68 us long; a dwell just below the real minimum dwell
    # cannot fit once clearance on both sides is required
    min_dwell = min(
        b.timestamp_ns - a.timestamp_ns
        for a, b in zip(dataset.capture.events, dataset.capture.events[1:])
    )
    with pytest.raises(ConfigError, match="no low period"):
        inject_glitches(
            list(dataset.capture.events), [GlitchSpec(1, min_dwell - 10, LOW_PERIOD_PULSE)], seed=1
        )


def test_profile_generation_counts_and_fallback():
    config = simple_config(profile_samples=100, profile_warmup=20)
    samples = generate_profile(config)
    assert len(samples) == 100
    assert [s.iteration for s in samples] == list(range(100))
    assert all(s.high_ns == 10_000 and s.low_ns == 8_000 for s in samples)


def test_generate_dataset_is_byte_identical_across_runs(tmp_path):
    scenario = builtin_scenario("jetson-paper")
    a = generate_dataset(scenario, tmp_path / "a")
    b = generate_dataset(scenario, tmp_path / "b")
    for key in a:
        assert filecmp.cmp(a[key], b[key], shallow=False), key


def test_different_seed_changes_dataset(tmp_path):
    from wirecal.synth import with_seed

    scenario = builtin_scenario("jetson-paper")
    a = generate_dataset(scenario, tmp_path / "a")
    b = generate_dataset(with_seed(scenario, 1), tmp_path / "b")
    assert not filecmp.cmp(a["capture"], b["capture"], shallow=False)


def test_manifest_restates_config_and_expectations(tmp_path):
    scenario = builtin_scenario("pi-paper")
    paths = generate_dataset(scenario, tmp_path)
    manifest = json.loads(paths["manifest"].read_text())
    assert manifest["scenario"] == "pi-paper"
    assert manifest["seed"] == scenario.config.seed
    assert manifest["expected"] == scenario.expected
    assert manifest["config"]["trials"] == 10
    assert set(manifest["files"]) == {"capture", "orchestrator_log", "profile_log"}


def test_committed_scenario_files_match_builtins():
    # the files under scenarios/ are serialized from code; they must not drift
    for name in BUILTIN_SCENARIO_NAMES:
        on_disk = load_scenario(SCENARIO_DIR / f"{name}.json")
        assert on_disk == builtin_scenario(name), name


def test_scenario_save_load_round_trip(tmp_path):
    scenario = builtin_scenario("pi-fault-delta")
    save_scenario(scenario, tmp_path / "s.json")
    assert load_scenario(tmp_path / "s.json") == scenario
    assert resolve_scenario(tmp_path / "s.json") == scenario


def test_resolve_scenario_unknown_name():
    with pytest.raises(ConfigError):
        resolve_scenario("no-such-scenario")


def test_recovered_constant_tracks_configured_target(jetson_calibration, pi_calibration):
    for calibration, target_us in ((jetson_calibration, -20.00), (pi_calibration, -86.13)):
        cal = calibration[3]
        assert abs(cal.c_p_ns - target_us * 1000) <= 0.01 * abs(target_us) * 1000


def test_config_validation():
    with pytest.raises(ConfigError):
        simple_config(trials=0)
    with pytest.raises(ConfigError):
        simple_config(rise_fraction=1.5)
    with pytest.raises(ConfigError):
        DurationSpec(CONSTANT, 0)
    with pytest.raises(ConfigError):
        DurationSpec("weird", 10)
    with pytest.raises(ConfigError):
        DurationSpec("outlier_mixture", 10, outlier_prob=0.6)
    with pytest.raises(ConfigError):
        GlitchSpec(0, 40, LOW_PERIOD_PULSE)
