import random

import pytest

from wirecal.errors import ParseError, QuantizationWarning
from wirecal.ingest import (
    FALLING,
    RISING,
    EdgeCapture,
    EdgeEvent,
    InferenceRecord,
    ProfileSample,
    group_by_trial,
    parse_edge_capture,
    parse_orchestrator_log,
    parse_profile_log,
    write_edge_capture,
    write_orchestrator_log,
    write_profile_log,
)
from oracles import random_capture


def write(path, text):
    path.write_text(text)
    return path


def test_analyzer_seconds_definitional_conversion(tmp_path):
    p = write(tmp_path / "a.csv", "time_s,level\n0.000000250,1\n0.001200250,0\n")
    cap = parse_edge_capture(p, format="analyzer_seconds", sample_rate_hz=100_000_000)
    assert [(e.timestamp_ns, e.direction) for e in cap.events] == [
        (250, RISING),
        (1_200_250, FALLING),
    ]


def test_header_only_file_gives_zero_events(tmp_path):
    p = write(tmp_path / "a.csv", "timestamp_ns,direction\n")
    cap = parse_edge_capture(p)
    assert cap.events == ()
    assert cap.sample_rate_hz == 100_000_000


def test_missing_header_rejected(tmp_path):
    p = write(tmp_path / "a.csv", "1000,R\n")
    with pytest.raises(ParseError):
        parse_edge_capture(p)


def test_native_round_trip_is_identical(tmp_path):
    rng = random.Random(11)
    for i in range(25):
        cap = random_capture(rng)
        p = tmp_path / f"c{i}.csv"
        write_edge_capture(cap, p)
        back = parse_edge_capture(p)
        assert back.events == cap.events
        assert back.sample_rate_hz == cap.sample_rate_hz
        assert back.source_id == cap.source_id


def test_synth_capture_reparses_identically(tmp_path, jetson_dataset):
    # round-trip oracle: the generator's internal event list survives disk
    p = tmp_path / "cap.csv"
    write_edge_capture(jetson_dataset.capture, p)
    assert parse_edge_capture(p).events == jetson_dataset.capture.events


def test_analyzer_round_trip_preserves_events(tmp_path):
    events = (EdgeEvent(250, RISING), EdgeEvent(1_200_250, FALLING), EdgeEvent(2_000_500, RISING))
    cap = EdgeCapture(events=events, sample_rate_hz=100_000_000, source_id="x")
    p = tmp_path / "a.csv"
    write_edge_capture(cap, p, format="analyzer_seconds")
    assert parse_edge_capture(p, format="analyzer_seconds").events == events


def test_parse_is_deterministic(tmp_path):
    p = write(tmp_path / "a.csv", "timestamp_ns,direction\n10,R\n1000,F\n")
    assert parse_edge_capture(p) == parse_edge_capture(p)


def test_native_rejects_non_monotonic_and_bad_rows(tmp_path):
    with pytest.raises(ParseError, match="non-monotonic"):
        parse_edge_capture(write(tmp_path / "a.csv", "timestamp_ns,direction\n100,R\n100,F\n"))
    with pytest.raises(ParseError, match="direction"):
        parse_edge_capture(write(tmp_path / "b.csv", "timestamp_ns,direction\n100,X\n"))
    with pytest.raises(ParseError, match="timestamp"):
        parse_edge_capture(write(tmp_path / "c.csv", "timestamp_ns,direction\nabc,R\n"))


def test_analyzer_collapses_equal_levels_and_keeps_leading_fall(tmp_path):
    p = write(
        tmp_path / "a.csv",
        "time_s,level\n0.000000100,0\n0.000000200,0\n0.000000300,1\n0.000000400,1\n",
    )
    cap = parse_edge_capture(p, format="analyzer_seconds", sample_rate_hz=10_000_000)
    assert [(e.timestamp_ns, e.direction) for e in cap.events] == [(100, FALLING), (300, RISING)]


def test_analyzer_rounding_collision_cancels_to_net_change(tmp_path):
    # 24.9 ns and 25.1 ns both round to 25: a sub-resolution pulse vanishes
    p = write(
        tmp_path / "a.csv",
        "time_s,level\n0.0000000249,1\n0.0000000251,0\n0.000000100,1\n",
    )
    cap = parse_edge_capture(p, format="analyzer_seconds", sample_rate_hz=1_000_000_000)
    assert [(e.timestamp_ns, e.direction) for e in cap.events] == [(100, RISING)]


def test_off_grid_timestamp_warns_but_parses(tmp_path):
    p = write(tmp_path / "a.csv", "timestamp_ns,direction\n105,R\n1000,F\n")
    with pytest.warns(QuantizationWarning):
        cap = parse_edge_capture(p, sample_rate_hz=100_000_000)
    assert len(cap.events) == 2


def test_metadata_block_parsed_and_overridable(tmp_path):
    p = write(
        tmp_path / "a.csv",
        "# sample_rate_hz=25000000\n# source_id=rig7\ntimestamp_ns,direction\n40,R\n4000,F\n",
    )
    cap = parse_edge_capture(p)
    assert (cap.sample_rate_hz, cap.source_id) == (25_000_000, "rig7")
    assert parse_edge_capture(p, sample_rate_hz=1_000_000_000).sample_rate_hz == 1_000_000_000


def test_orchestrator_line_parses_to_outer_interval(tmp_path):
    p = write(
        tmp_path / "log.jsonl",
        '{"trial_id": "T1", "index": 0, "t0_ns": 0, "t1_ns": 10000, "t2_ns": 1210000, "t3_ns": 1218000}\n',
    )
    (rec,) = parse_orchestrator_log(p)
    assert rec.outer_ns == 1_218_000
    assert rec.inner_ns == 1_200_000


def test_orchestrator_names_violated_ordering(tmp_path):
    p = write(
        tmp_path / "log.jsonl",
        '{"trial_id": "T1", "index": 0, "t0_ns": 0, "t1_ns": 10000, "t2_ns": 9000, "t3_ns": 1218000}\n',
    )
    with pytest.raises(ParseError, match=r"t1 <= t2"):
        parse_orchestrator_log(p)


def test_orchestrator_rejects_duplicate_key(tmp_path):
    line = '{"trial_id": "T1", "index": 0, "t0_ns": 0, "t1_ns": 1, "t2_ns": 2, "t3_ns": 3}\n'
    with pytest.raises(ParseError, match="duplicate"):
        parse_orchestrator_log(write(tmp_path / "log.jsonl", line + line))


def test_orchestrator_407_line_trial(tmp_path):
    records = [
        InferenceRecord("T1", i, i * 10_000, i * 10_000 + 10, i * 10_000 + 5_000, i * 10_000 + 6_000)
        for i in range(407)
    ]
    p = tmp_path / "log.jsonl"
    write_orchestrator_log(records, p)
    parsed = parse_orchestrator_log(p)
    assert len(parsed) == 407
    assert [r.index for r in parsed] == list(range(407))
    assert parsed == records


def test_group_by_trial_keeps_first_appearance_order(tmp_path):
    records = [
        InferenceRecord("B", 0, 0, 1, 2, 3),
        InferenceRecord("B", 1, 10, 11, 12, 13),
        InferenceRecord("A", 0, 20, 21, 22, 23),
    ]
    groups = group_by_trial(records)
    assert [g[0] for g in groups] == ["B", "A"]
    assert len(groups[0][1]) == 2


def test_profile_log_round_trip_and_count(tmp_path):
    samples = [ProfileSample(i, 9_830 + (i % 3), 8_060) for i in range(5000)]
    p = tmp_path / "profile.jsonl"
    write_profile_log(samples, p)
    parsed = parse_profile_log(p)
    assert len(parsed) == 5000
    assert parsed == samples


def test_profile_log_rejects_nonpositive_duration(tmp_path):
    p = write(tmp_path / "p.jsonl", '{"iteration": 0, "high_ns": 0, "low_ns": 10}\n')
    with pytest.raises(ParseError):
        parse_profile_log(p)
