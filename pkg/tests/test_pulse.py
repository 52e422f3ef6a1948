import random

import pytest

from wirecal.errors import AlignmentError
from wirecal.ingest import FALLING, RISING, EdgeCapture, EdgeEvent, InferenceRecord, group_by_trial
from wirecal.pulse import (
    CONSECUTIVE_SAME_DIRECTION,
    AlignedTrial,
    align,
    glitch_filter,
    pair_edges,
    segment_trials,
    PulsePair,
)
from wirecal.scenarios import builtin_scenario
from wirecal.synth import build_dataset
from oracles import filter_oracle, pair_oracle, random_capture


def capture_of(*pairs):
    events = tuple(EdgeEvent(t, d) for t, d in pairs)
    return EdgeCapture(events=events, sample_rate_hz=1_000_000_000, source_id="t")


def test_filter_suppresses_short_low_dwell():
    cap = capture_of((0, RISING), (100, FALLING), (150, RISING), (10_000, FALLING))
    out = glitch_filter(cap, 75)
    assert [(e.timestamp_ns, e.direction) for e in out.events] == [(0, RISING), (10_000, FALLING)]
    # and the brute-force timeline oracle agrees
    assert list(out.events) == filter_oracle(cap.events, 75)


def test_filter_threshold_zero_is_identity():
    rng = random.Random(3)
    for _ in range(20):
        cap = random_capture(rng)
        assert glitch_filter(cap, 0) is cap


def test_filter_removes_six_spurious_edges_from_glitched_capture(jetson_dataset):
    cap = jetson_dataset.capture
    assert len(cap.events) == 8146
    filtered = glitch_filter(cap, 75)
    assert len(filtered.events) == 8140
    assert filtered.alternating


def test_filter_matches_oracle_on_random_captures():
    rng = random.Random(1234)
    for _ in range(300):
        cap = random_capture(rng)
        threshold = rng.randint(0, 250)
        assert list(glitch_filter(cap, threshold).events) == filter_oracle(cap.events, threshold)


def test_filter_idempotent_and_monotone():
    rng = random.Random(99)
    for _ in range(200):
        cap = random_capture(rng)
        t1, t2 = sorted((rng.randint(0, 250), rng.randint(0, 250)))
        once = glitch_filter(cap, t2)
        assert glitch_filter(once, t2).events == once.events
        assert len(once.events) <= len(glitch_filter(cap, t1).events)


def test_filter_leaves_no_subthreshold_dwell():
    rng = random.Random(5)
    for _ in range(100):
        cap = random_capture(rng)
        threshold = rng.randint(1, 250)
        out = glitch_filter(cap, threshold).events
        assert all(b.timestamp_ns - a.timestamp_ns >= threshold for a, b in zip(out, out[1:]))


def test_pairing_single_clean_pulse():
    outcome = pair_edges(capture_of((0, RISING), (1000, FALLING)))
    assert outcome.status == "pass"
    assert outcome.pair_count == 1
    assert outcome.pairs[0].width_ns == 1000


def test_pairing_clean_capture_of_8140_edges(jetson_dataset):
    filtered = glitch_filter(jetson_dataset.capture, 100)
    outcome = pair_edges(filtered, expected_count=4070)
    assert outcome.status == "pass"
    assert outcome.pair_count == 4070
    assert not outcome.violations


def test_pairing_consecutive_rising_is_violation_with_greedy_recovery():
    outcome = pair_edges(capture_of((0, RISING), (500, RISING), (1000, FALLING)))
    assert outcome.status == "fail"
    assert outcome.violations == ((500, CONSECUTIVE_SAME_DIRECTION),)
    assert outcome.pair_count == 1
    assert outcome.pairs[0].rise_ns == 500  # recovery restarts at the newest rise


def test_pairing_count_mismatch_alone_fails():
    outcome = pair_edges(capture_of((0, RISING), (1000, FALLING)), expected_count=2)
    assert outcome.status == "fail"
    assert not outcome.violations


def test_pairing_matches_oracle_on_corrupted_sequences():
    rng = random.Random(77)
    for _ in range(300):
        cap = random_capture(rng, alternate_prob=0.7)
        expected = rng.choice([None, len(cap.events) // 2])
        outcome = pair_edges(cap, expected_count=expected)
        pairs, violations, status = pair_oracle(cap.events, expected_count=expected)
        assert [(p.rise_ns, p.fall_ns) for p in outcome.pairs] == pairs
        assert list(outcome.violations) == violations
        assert outcome.status == status


def test_pairing_clean_alternating_yields_half_pairs_and_order():
    rng = random.Random(8)
    for _ in range(50):
        n = rng.randint(1, 40)
        events, t = [], 0
        for i in range(2 * n):
            t += rng.randint(1, 500)
            events.append(EdgeEvent(t, RISING if i % 2 == 0 else FALLING))
        cap = EdgeCapture(events=tuple(events), sample_rate_hz=10**9, source_id="c")
        outcome = pair_edges(cap)
        assert outcome.status == "pass"
        assert outcome.pair_count == n
        assert all(p.width_ns > 0 for p in outcome.pairs)
        assert all(a.fall_ns <= b.rise_ns for a, b in zip(outcome.pairs, outcome.pairs[1:]))


def test_filter_then_pair_equals_pair_on_clean():
    # spurious dwells all below threshold: filtering recovers the clean pairing
    clean = capture_of(
        (0, RISING), (1_000_000, FALLING), (2_000_000, RISING), (3_000_000, FALLING)
    )
    noisy_events = list(clean.events) + [
        EdgeEvent(1_500_000, RISING),
        EdgeEvent(1_500_040, FALLING),
    ]
    noisy = EdgeCapture(
        events=tuple(sorted(noisy_events, key=lambda e: e.timestamp_ns)),
        sample_rate_hz=10**9,
        source_id="n",
    )
    cleaned = pair_edges(glitch_filter(noisy, 75))
    assert cleaned.pairs == pair_edges(clean).pairs
    assert cleaned.status == "pass"


def test_segment_ten_trials_of_407(jetson_dataset):
    outcome = pair_edges(glitch_filter(jetson_dataset.capture, 100))
    segments = segment_trials(outcome.pairs, 1_000_000_000)
    assert len(segments) == 10
    assert all(len(s) == 407 for s in segments)


def test_segment_no_gap_is_single_segment():
    pairs = [PulsePair(i * 10_000, i * 10_000 + 1_000) for i in range(50)]
    assert len(segment_trials(pairs, 1_000_000_000)) == 1


def test_segment_splits_at_five_second_gap():
    first = [PulsePair(i * 10_000, i * 10_000 + 1_000) for i in range(10)]
    offset = first[-1].fall_ns + 5_000_000_000
    second = [PulsePair(offset + i * 10_000, offset + i * 10_000 + 1_000) for i in range(10)]
    segments = segment_trials(first + second, 100_000_000)
    assert [len(s) for s in segments] == [10, 10]


def _records(trial_id, n):
    return [
        InferenceRecord(trial_id, i, i * 100_000, i * 100_000 + 10_000, i * 100_000 + 50_000, i * 100_000 + 58_000)
        for i in range(n)
    ]


def _pulses(n):
    return [PulsePair(i * 100_000 + 10_000, i * 100_000 + 50_000) for i in range(n)]


def test_align_excludes_warmup_but_keeps_items():
    (trial,) = align([("T1", _records("T1", 407))], [_pulses(407)], warmup_exclude=1)
    assert len(trial.items) == 407
    assert len(trial.effective_items) == 406
    assert trial.warmup_excluded == 1


def test_align_count_mismatch_names_trial():
    with pytest.raises(AlignmentError, match=r"T1: 407 records vs 406 pulses"):
        align([("T1", _records("T1", 407))], [_pulses(406)])


def test_align_segment_count_mismatch():
    with pytest.raises(AlignmentError, match="2 trials .* 1 pulse segments"):
        align([("T1", _records("T1", 2)), ("T2", _records("T2", 2))], [_pulses(2)])


def test_five_trial_dataset_has_2030_effective_items():
    import dataclasses
    scenario = builtin_scenario("jetson-paper")
    config = dataclasses.replace(scenario.config, trials=5, glitch_specs=())
    dataset = build_dataset(dataclasses.replace(scenario, config=config))
    outcome = pair_edges(dataset.capture)
    aligned = align(group_by_trial(list(dataset.records)), segment_trials(outcome.pairs), 1)
    assert len(aligned) == 5
    assert sum(len(t.effective_items) for t in aligned) == 2030
