"""Command-line interface: capture + log in, calibrations and verdicts out.

Exit codes form the CI contract: 0 accept/success, 1 gate reject, 2
strict-ordering or alignment FAIL upstream of the gate, 3 parse or
configuration error.  Every command writes a run manifest tracing its
outputs back to input digests; repeated runs differ only in the timestamp.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from wirecal import __version__
from wirecal.errors import AlignmentError, ConfigError, ParseError, StoreConflictError
from wirecal.gate import MODES, PLATFORM_AWARE, STATISTICS, TRIAL_MEDIAN, GateConfig, evaluate_gate
from wirecal.ingest import (
    OperatingStateTag,
    group_by_trial,
    parse_edge_capture,
    parse_orchestrator_log,
    parse_profile_log,
)
from wirecal.pulse import (
    DEFAULT_GAP_THRESHOLD_NS,
    DEFAULT_WARMUP_EXCLUDE,
    align,
    glitch_filter,
    pair_edges,
    segment_trials,
)
from wirecal.reporting import FORMATS, REPORT_FILENAMES, TEXT, render_calibration, render_drift, render_gate_verdict, render_profile_comparison, render_sweep
from wirecal.residual import (
    CONVENTIONS,
    DEFAULT_K_FACTOR,
    OUTER,
    compute_deltas,
    platform_constant,
    trial_stats,
)
from wirecal.scenarios import BUILTIN_SCENARIO_NAMES, resolve_scenario
from wirecal.sensitivity import (
    DEFAULT_FILTER_NS,
    DEFAULT_PROFILE_WARMUP,
    DEFAULT_SWEEP_THRESHOLDS_NS,
    filter_sweep,
    profile_compare,
    profile_summary,
)
from wirecal.store import (
    DEFAULT_DRIFT_THRESHOLD_NS,
    LATEST_SESSION,
    POLICIES,
    CalibrationStore,
    SessionEntry,
    resolve_store_path,
)
from wirecal.synth import generate_dataset, with_seed

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_ALIGNMENT = 2
EXIT_USAGE = 3


def _sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return "sha256:" + digest.hexdigest()


def _write_run_manifest(out_dir: Path, command: str, inputs, config: dict, outputs) -> Path:
    manifest = {
        "command": command,
        "created_at": datetime.now(timezone.utc).isoformat(),
        "tool_version": __version__,
        "inputs": [{"path": str(p), "digest": _sha256(p)} for p in inputs],
        "config": config,
        "outputs": [str(p) for p in outputs],
    }
    path = out_dir / "run_manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _emit(render, args, command: str, inputs, config: dict) -> None:
    """Print the selected format; persist all formats plus the run manifest.

    ``render`` maps a format name to the report string.  The output
    directory always receives report.txt, report.csv, and report.json so
    downstream automation never depends on the interactive format choice.
    """
    print(render(args.format))
    out_dir = Path(args.out) if args.out else Path("wirecal-out") / command
    out_dir.mkdir(parents=True, exist_ok=True)
    outputs = []
    for fmt, filename in REPORT_FILENAMES.items():
        path = out_dir / filename
        path.write_text(render(fmt) + "\n")
        outputs.append(path)
    _write_run_manifest(out_dir, command, inputs, config, outputs)


def _run_pipeline(args):
    """capture + log -> aligned trials and residual series (shared front half)."""
    capture = parse_edge_capture(args.capture, format=args.capture_format)
    records = parse_orchestrator_log(args.log)
    filtered = glitch_filter(capture, args.filter_ns)
    expected = args.expected_count if args.expected_count else len(records)
    outcome = pair_edges(filtered, expected_count=expected)
    if outcome.status == "fail":
        raise AlignmentError(
            f"pairing FAIL at filter {args.filter_ns} ns: {outcome.pair_count} pairs vs "
            f"{expected} expected, {len(outcome.violations)} ordering violations"
        )
    segments = segment_trials(outcome.pairs, args.gap_ns)
    aligned = align(group_by_trial(records), segments, args.warmup_exclude)
    series = [compute_deltas(trial, args.perf_convention) for trial in aligned]
    return capture, records, aligned, series


def _pipeline_settings(args) -> dict:
    return {
        "filter_ns": args.filter_ns,
        "gap_ns": args.gap_ns,
        "warmup_exclude": args.warmup_exclude,
        "perf_convention": args.perf_convention,
    }


def cmd_calibrate(args) -> int:
    if args.record and not args.session_id:
        raise ConfigError("--record requires --session-id")
    _, _, aligned, series = _run_pipeline(args)
    stats = [trial_stats(s) for s in series]
    tag = OperatingStateTag(
        platform=args.platform,
        session_id=args.session_id or "adhoc",
        state_label=args.state_label,
        captured_at=args.captured_at or datetime.now(timezone.utc).isoformat(),
    )
    calibration = platform_constant(stats, tag, k=args.k, tolerance_ns=args.tau_ns)
    settings = _pipeline_settings(args) | {"k": args.k}
    inputs = [args.capture, args.log]
    _emit(
        lambda fmt: render_calibration(calibration, fmt=fmt, settings=settings),
        args, "calibrate", inputs, settings,
    )

    if args.record:
        digest = hashlib.sha256()
        for path in inputs:
            digest.update(Path(path).read_bytes())
        store = CalibrationStore(resolve_store_path(args.store))
        identifier = store.record_session(
            SessionEntry(
                tag=tag,
                calibration=calibration,
                created_at=tag.captured_at,
                source_digest="sha256:" + digest.hexdigest(),
            )
        )
        print(f"recorded session {identifier} in {store.path}")
    return EXIT_OK


def _resolve_constant_and_tau(args, series):
    """Gate inputs: explicit flags beat the store; tau falls back to k * worst std."""
    constant_ns = args.constant_ns
    tau_ns = args.tau_ns
    if constant_ns is None and args.mode == PLATFORM_AWARE:
        if not args.platform:
            raise ConfigError(
                "platform_aware validation needs --constant-ns or --platform with a store"
            )
        store = CalibrationStore(resolve_store_path(args.store))
        calibration = store.lookup_constant(args.platform, policy=args.policy)
        constant_ns = calibration.c_p_ns
        if tau_ns is None:
            tau_ns = calibration.tolerance_ns
    if tau_ns is None:
        stats = [trial_stats(s) for s in series]
        stds = [s.sample_std_ns for s in stats if s.sample_std_ns is not None]
        if not stds:
            raise ConfigError("cannot derive tau: supply --tau-ns")
        tau_ns = args.k * max(stds)
    return constant_ns, tau_ns


def cmd_validate(args) -> int:
    _, _, _, series = _run_pipeline(args)
    constant_ns, tau_ns = _resolve_constant_and_tau(args, series)
    config = GateConfig(
        mode=args.mode,
        tolerance_ns=tau_ns,
        constant_ns=constant_ns,
        statistic=args.statistic,
    )
    verdict = evaluate_gate(series, config)
    settings = _pipeline_settings(args) | {
        "mode": args.mode,
        "statistic": args.statistic,
        "tau_ns": tau_ns,
        "constant_ns": constant_ns,
    }
    _emit(
        lambda fmt: render_gate_verdict(verdict, fmt=fmt, settings=settings),
        args, "validate", [args.capture, args.log], settings,
    )
    return EXIT_OK if verdict.accepted else EXIT_REJECT


def cmd_sweep(args) -> int:
    capture = parse_edge_capture(args.capture, format=args.capture_format)
    records = parse_orchestrator_log(args.log) if args.log else None
    expected = args.expected_count
    if expected is None and records:
        expected = len(records)
    thresholds = (
        tuple(int(t) for t in args.thresholds_ns.split(","))
        if args.thresholds_ns
        else DEFAULT_SWEEP_THRESHOLDS_NS
    )
    rows = filter_sweep(
        capture,
        records,
        thresholds_ns=thresholds,
        expected_count=expected,
        gap_threshold_ns=args.gap_ns,
        warmup_exclude=args.warmup_exclude,
        convention=args.perf_convention,
    )
    inputs = [args.capture] + ([args.log] if args.log else [])
    _emit(
        lambda fmt: render_sweep(rows, fmt=fmt),
        args, "sweep", inputs, {"thresholds_ns": list(thresholds)},
    )
    return EXIT_OK


def cmd_profile_compare(args) -> int:
    samples = parse_profile_log(args.profile)
    summary = profile_summary(samples, warmup_exclude=args.profile_warmup)
    constant_ns = args.constant_ns
    if constant_ns is None:
        if not args.platform:
            raise ConfigError("profile-compare needs --constant-ns or --platform with a store")
        store = CalibrationStore(resolve_store_path(args.store))
        constant_ns = store.lookup_constant(args.platform, policy=args.policy).c_p_ns
    comparison = profile_compare(summary, constant_ns)
    settings = {"profile_warmup": args.profile_warmup, "constant_ns": constant_ns}
    _emit(
        lambda fmt: render_profile_comparison(comparison, fmt=fmt),
        args, "profile-compare", [args.profile], settings,
    )
    return EXIT_OK


def cmd_drift(args) -> int:
    store = CalibrationStore(resolve_store_path(args.store))
    report_obj = store.drift_report(args.platform, threshold_ns=args.drift_threshold_ns)
    settings = {"platform": args.platform, "threshold_ns": args.drift_threshold_ns}
    _emit(
        lambda fmt: render_drift(report_obj, fmt=fmt),
        args, "drift", [store.path], settings,
    )
    return EXIT_OK


def cmd_synth(args) -> int:
    scenario = resolve_scenario(args.scenario)
    if args.seed is not None:
        scenario = with_seed(scenario, args.seed)
    paths = generate_dataset(scenario, args.out)
    out_dir = Path(args.out)
    _write_run_manifest(
        out_dir,
        "synth",
        [],
        {"scenario": scenario.name, "seed": scenario.config.seed},
        sorted(str(p) for p in paths.values()),
    )
    print(f"wrote scenario {scenario.name!r} dataset to {out_dir}")
    for key, path in sorted(paths.items()):
        print(f"  {key}: {path}")
    return EXIT_OK


def _add_common_output_flags(parser):
    parser.add_argument("--format", choices=FORMATS, default=TEXT, help="report format")
    parser.add_argument("--out", help="output directory (default wirecal-out/<command>)")


def _add_pipeline_flags(parser):
    parser.add_argument("--capture", required=True, help="edge capture CSV")
    parser.add_argument(
        "--capture-format",
        choices=("native_ns", "analyzer_seconds"),
        default="native_ns",
    )
    parser.add_argument("--log", required=True, help="orchestrator timestamp log (JSONL)")
    parser.add_argument("--filter-ns", type=int, default=DEFAULT_FILTER_NS)
    parser.add_argument("--gap-ns", type=int, default=DEFAULT_GAP_THRESHOLD_NS)
    parser.add_argument("--warmup-exclude", type=int, default=DEFAULT_WARMUP_EXCLUDE)
    parser.add_argument("--perf-convention", choices=CONVENTIONS, default=OUTER)
    parser.add_argument("--expected-count", type=int, help="expected pulse pairs (default: record count)")
    parser.add_argument("--k", type=float, default=DEFAULT_K_FACTOR)
    parser.add_argument("--tau-ns", type=float, help="residual tolerance, overrides derivation")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wirecal",
        description="Calibrate and validate software-clock inference timing against wire edges.",
    )
    parser.add_argument("--version", action="version", version=f"wirecal {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("calibrate", help="compute the per-platform constant from a capture+log")
    _add_pipeline_flags(p)
    p.add_argument("--platform", required=True)
    p.add_argument("--session-id")
    p.add_argument("--state-label", default="calibrated-C0")
    p.add_argument("--captured-at", help="ISO timestamp for provenance (default: now)")
    p.add_argument("--record", action="store_true", help="record the session in the store")
    p.add_argument("--store", help="store path (or set WIRECAL_STORE)")
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("validate", help="gate a capture+log against a calibration")
    _add_pipeline_flags(p)
    p.add_argument("--mode", choices=MODES, default=PLATFORM_AWARE)
    p.add_argument("--statistic", choices=STATISTICS, default=TRIAL_MEDIAN)
    p.add_argument("--constant-ns", type=float, help="platform constant (else store lookup)")
    p.add_argument("--platform", help="platform for store lookup")
    p.add_argument("--policy", choices=POLICIES, default=LATEST_SESSION)
    p.add_argument("--store", help="store path (or set WIRECAL_STORE)")
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("sweep", help="glitch-filter threshold sensitivity sweep")
    p.add_argument("--capture", required=True)
    p.add_argument(
        "--capture-format", choices=("native_ns", "analyzer_seconds"), default="native_ns"
    )
    p.add_argument("--log", help="orchestrator log; enables median residual per row")
    p.add_argument("--thresholds-ns", help="comma-separated thresholds (default: 13-value sweep)")
    p.add_argument("--expected-count", type=int)
    p.add_argument("--gap-ns", type=int, default=DEFAULT_GAP_THRESHOLD_NS)
    p.add_argument("--warmup-exclude", type=int, default=DEFAULT_WARMUP_EXCLUDE)
    p.add_argument("--perf-convention", choices=CONVENTIONS, default=OUTER)
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("profile-compare", help="direct GPIO profile vs calibrated constant")
    p.add_argument("--profile", required=True, help="profile log (JSONL)")
    p.add_argument("--profile-warmup", type=int, default=DEFAULT_PROFILE_WARMUP)
    p.add_argument("--constant-ns", type=float)
    p.add_argument("--platform")
    p.add_argument("--policy", choices=POLICIES, default=LATEST_SESSION)
    p.add_argument("--store")
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_profile_compare)

    p = sub.add_parser("drift", help="cross-session constant drift for a platform")
    p.add_argument("--platform", required=True)
    p.add_argument("--drift-threshold-ns", type=float, default=DEFAULT_DRIFT_THRESHOLD_NS)
    p.add_argument("--store")
    _add_common_output_flags(p)
    p.set_defaults(func=cmd_drift)

    p = sub.add_parser(
        "synth",
        help=f"generate a synthetic dataset (built-ins: {', '.join(BUILTIN_SCENARIO_NAMES)})",
    )
    p.add_argument("--scenario", required=True, help="built-in name or scenario file path")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, help="override the scenario seed")
    p.set_defaults(func=cmd_synth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AlignmentError as exc:
        print(f"alignment FAIL: {exc}", file=sys.stderr)
        return EXIT_ALIGNMENT
    except (ParseError, ConfigError, StoreConflictError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
