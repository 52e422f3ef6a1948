import pytest

from wirecal.ingest import OperatingStateTag, group_by_trial
from wirecal.pulse import align, glitch_filter, pair_edges, segment_trials
from wirecal.residual import compute_deltas, platform_constant, trial_stats
from wirecal.scenarios import builtin_scenario
from wirecal.synth import build_dataset


@pytest.fixture(scope="session")
def jetson_dataset():
    return build_dataset(builtin_scenario("jetson-paper"))


@pytest.fixture(scope="session")
def pi_dataset():
    return build_dataset(builtin_scenario("pi-paper"))


def run_calibration(dataset, filter_ns=100, warmup_exclude=1, convention="outer"):
    """Full in-memory pipeline over a SynthDataset: (aligned, series, stats, cal)."""
    filtered = glitch_filter(dataset.capture, filter_ns)
    outcome = pair_edges(filtered, expected_count=len(dataset.records))
    assert outcome.status == "pass", f"pairing failed: {outcome.pair_count} pairs"
    aligned = align(group_by_trial(list(dataset.records)), segment_trials(outcome.pairs), warmup_exclude)
    series = [compute_deltas(t, convention) for t in aligned]
    stats = [trial_stats(s) for s in series]
    platform = dataset.scenario.name.split("-")[0]
    cal = platform_constant(stats, OperatingStateTag(platform, "S1"))
    return aligned, series, stats, cal


@pytest.fixture(scope="session")
def jetson_calibration(jetson_dataset):
    return run_calibration(jetson_dataset)


@pytest.fixture(scope="session")
def pi_calibration(pi_dataset):
    return run_calibration(pi_dataset)
