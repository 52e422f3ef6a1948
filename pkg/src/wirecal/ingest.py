"""Readers and writers for edge captures, inference timestamp logs, and GPIO profile logs.

Three on-disk formats are supported, all line-oriented text with an optional
leading metadata block of ``# key=value`` comment lines:

Edge capture, native format (lossless, nanosecond integers)::

    # sample_rate_hz=100000000
    # source_id=bench-a
    timestamp_ns,direction
    1001000,R
    2201000,F

Edge capture, analyzer export format (decimal seconds plus a level column,
as produced by common logic-analyzer CSV exports)::

    # sample_rate_hz=100000000
    time_s,level
    0.000000250,1
    0.001200250,0

Each analyzer row whose level differs from the previous row is one
transition; the level before the first row is taken to be the complement of
the first row's level, so the first row always yields an edge (a leading
falling edge is preserved and left to pulse pairing to flag).  Adjacent
equal-level rows collapse to nothing.  Seconds are converted to integer
nanoseconds with round-half-even.

Orchestrator log (one inference per line, JSON object)::

    {"trial_id": "T01", "index": 0, "t0_ns": 0, "t1_ns": 10000, "t2_ns": 1210000, "t3_ns": 1218000}

Profile log (one timed GPIO call iteration per line, JSON object)::

    {"iteration": 0, "high_ns": 9830, "low_ns": 8060}

All timestamps are integer nanoseconds internally; parsing is deterministic
and a parsed file re-serialized through the writers round-trips exactly.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass, field
from decimal import Decimal, ROUND_HALF_EVEN
from pathlib import Path

from wirecal.errors import ParseError, QuantizationWarning

RISING = "R"
FALLING = "F"
DIRECTIONS = (RISING, FALLING)

DEFAULT_SAMPLE_RATE_HZ = 100_000_000


@dataclass(frozen=True)
class EdgeEvent:
    """One wire-level transition: nanoseconds from capture start plus direction."""

    timestamp_ns: int
    direction: str

    def __post_init__(self):
        if self.timestamp_ns < 0:
            raise ValueError(f"edge timestamp must be >= 0, got {self.timestamp_ns}")
        if self.direction not in DIRECTIONS:
            raise ValueError(f"direction must be one of {DIRECTIONS}, got {self.direction!r}")


@dataclass(frozen=True)
class EdgeCapture:
    """An ordered edge stream with capture metadata.

    ``alternating`` is False when any two consecutive events share a
    direction; the flag is preserved so pairing can report the violation
    rather than the parser rejecting the capture.
    """

    events: tuple[EdgeEvent, ...]
    sample_rate_hz: int
    source_id: str
    alternating: bool = field(init=False)

    def __post_init__(self):
        if self.sample_rate_hz <= 0:
            raise ValueError("sample_rate_hz must be positive")
        events = tuple(self.events)
        object.__setattr__(self, "events", events)
        for a, b in zip(events, events[1:]):
            if b.timestamp_ns <= a.timestamp_ns:
                raise ValueError(
                    f"events must be strictly increasing: {a.timestamp_ns} then {b.timestamp_ns}"
                )
        alternating = all(a.direction != b.direction for a, b in zip(events, events[1:]))
        object.__setattr__(self, "alternating", alternating)

    @property
    def quantum_ns(self) -> int:
        """Sample grid step implied by the sample rate (10 ns at 100 MHz)."""
        return max(1, round(1e9 / self.sample_rate_hz))


@dataclass(frozen=True)
class InferenceRecord:
    """Four monotonic software-clock timestamps bracketing one inference."""

    trial_id: str
    index: int
    t0_ns: int
    t1_ns: int
    t2_ns: int
    t3_ns: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("index must be nonnegative")
        name = violated_ordering(self.t0_ns, self.t1_ns, self.t2_ns, self.t3_ns)
        if name:
            raise ValueError(f"timestamps violate {name}")

    @property
    def outer_ns(self) -> int:
        """Full bracketing interval t3 - t0."""
        return self.t3_ns - self.t0_ns

    @property
    def inner_ns(self) -> int:
        """Inference-only interval t2 - t1."""
        return self.t2_ns - self.t1_ns


def violated_ordering(t0, t1, t2, t3):
    """Name the violated comparison in t0 < t1 <= t2 < t3, or None if ordered."""
    if not t0 < t1:
        return "t0 < t1"
    if not t1 <= t2:
        return "t1 <= t2"
    if not t2 < t3:
        return "t2 < t3"
    return None


@dataclass(frozen=True)
class ProfileSample:
    """One tight-loop iteration of timed gpio.high / gpio.low calls."""

    iteration: int
    high_ns: int
    low_ns: int

    def __post_init__(self):
        if self.iteration < 0:
            raise ValueError("iteration must be nonnegative")
        if self.high_ns <= 0 or self.low_ns <= 0:
            raise ValueError("call durations must be positive")


@dataclass(frozen=True)
class OperatingStateTag:
    """Provenance for a calibration: platform, operating state, and session."""

    platform: str
    session_id: str
    state_label: str = "calibrated-C0"
    captured_at: str = ""

    def __post_init__(self):
        if not self.platform:
            raise ValueError("platform must be nonempty")
        if not self.session_id:
            raise ValueError("session_id must be nonempty")


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def _read_metadata_lines(lines):
    """Split leading '# key=value' comment lines from the remaining lines.

    Returns (metadata dict, list of (lineno, text) for the rest).
    """
    meta = {}
    rest = []
    in_header = True
    for lineno, raw in enumerate(lines, start=1):
        text = raw.rstrip("\n")
        if in_header and text.startswith("#"):
            body = text[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
            continue
        in_header = False
        rest.append((lineno, text))
    return meta, rest


def _seconds_to_ns(text: str) -> int:
    """Convert a decimal-seconds field to integer nanoseconds, round-half-even."""
    return int(Decimal(text).scaleb(9).to_integral_value(rounding=ROUND_HALF_EVEN))


def parse_edge_capture(
    path,
    format: str = "native_ns",
    sample_rate_hz: int | None = None,
    source_id: str | None = None,
) -> EdgeCapture:
    """Parse an edge capture file into an EdgeCapture.

    ``format`` is ``native_ns`` (timestamp_ns,direction) or
    ``analyzer_seconds`` (time_s,level).  Explicit ``sample_rate_hz`` /
    ``source_id`` arguments override file metadata, which overrides the
    defaults (100 MHz, the file stem).

    Timestamps off the declared sample grid raise a QuantizationWarning but
    do not fail, so trimmed or resampled exports remain usable.  Malformed
    rows and non-monotonic timestamps raise ParseError.
    """
    path = Path(path)
    if format not in ("native_ns", "analyzer_seconds"):
        raise ParseError(f"unknown edge capture format {format!r}", path=path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", path=path) from exc

    meta, rows = _read_metadata_lines(lines)
    rate = sample_rate_hz or int(meta.get("sample_rate_hz", DEFAULT_SAMPLE_RATE_HZ))
    source = source_id or meta.get("source_id", path.stem)

    expected_header = "timestamp_ns,direction" if format == "native_ns" else "time_s,level"
    if not rows:
        raise ParseError("missing header row", path=path)
    header_lineno, header = rows[0]
    if header.strip() != expected_header:
        raise ParseError(
            f"expected header {expected_header!r}, got {header.strip()!r}",
            path=path,
            line=header_lineno,
        )

    if format == "native_ns":
        events = _parse_native_rows(rows[1:], path)
    else:
        events = _parse_analyzer_rows(rows[1:], path)

    capture = EdgeCapture(events=tuple(events), sample_rate_hz=rate, source_id=source)
    _warn_off_grid(capture, path)
    return capture


def _parse_native_rows(rows, path):
    events = []
    for lineno, text in rows:
        if not text.strip():
            continue
        parts = text.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected 'timestamp_ns,direction', got {text!r}", path, lineno)
        try:
            ts = int(parts[0])
        except ValueError:
            raise ParseError(f"bad timestamp {parts[0]!r}", path, lineno) from None
        direction = parts[1].strip()
        if direction not in DIRECTIONS:
            raise ParseError(f"bad direction {parts[1]!r} (want R or F)", path, lineno)
        if ts < 0:
            raise ParseError(f"negative timestamp {ts}", path, lineno)
        if events and ts <= events[-1].timestamp_ns:
            raise ParseError(
                f"non-monotonic timestamp {ts} after {events[-1].timestamp_ns}", path, lineno
            )
        events.append(EdgeEvent(ts, direction))
    return events


def _parse_analyzer_rows(rows, path):
    # Each row whose level differs from the previous one is a transition;
    # the first row is always a transition (prior level = its complement).
    transitions = []
    prev_level = None
    prev_ns = None
    for lineno, text in rows:
        if not text.strip():
            continue
        parts = text.split(",")
        if len(parts) != 2:
            raise ParseError(f"expected 'time_s,level', got {text!r}", path, lineno)
        try:
            ts = _seconds_to_ns(parts[0])
        except ArithmeticError:
            raise ParseError(f"bad time_s value {parts[0]!r}", path, lineno) from None
        level = parts[1].strip()
        if level not in ("0", "1"):
            raise ParseError(f"bad level {parts[1]!r} (want 0 or 1)", path, lineno)
        if ts < 0:
            raise ParseError(f"negative time {parts[0]!r}", path, lineno)
        if prev_ns is not None and ts < prev_ns:
            raise ParseError(f"non-monotonic time {parts[0]!r}", path, lineno)
        prev_ns = ts
        if level == prev_level:
            continue
        transitions.append((ts, RISING if level == "1" else FALLING))
        prev_level = level

    # Rounding can collide two transitions onto one nanosecond; such a run is
    # below wire resolution, so keep only its net level change.
    events = []
    i = 0
    while i < len(transitions):
        j = i
        while j + 1 < len(transitions) and transitions[j + 1][0] == transitions[i][0]:
            j += 1
        if (j - i) % 2 == 0:
            # Odd run length: net transition in the direction of the last one.
            events.append(EdgeEvent(transitions[i][0], transitions[j][1]))
        i = j + 1
    return events


def _warn_off_grid(capture: EdgeCapture, path):
    quantum = capture.quantum_ns
    if quantum <= 1:
        return
    off = [e.timestamp_ns for e in capture.events if e.timestamp_ns % quantum]
    if off:
        warnings.warn(
            f"{path}: {len(off)} of {len(capture.events)} timestamps are not multiples of "
            f"{quantum} ns (declared sample rate {capture.sample_rate_hz} Hz); "
            f"first offender {off[0]}",
            QuantizationWarning,
            stacklevel=2,
        )


def parse_orchestrator_log(path) -> list[InferenceRecord]:
    """Parse a line-delimited orchestrator log into InferenceRecords.

    Records are returned grouped by trial in first-appearance order and
    ordered by index within each trial.  Lines violating the timestamp
    ordering t0 < t1 <= t2 < t3 or duplicating a (trial_id, index) key are
    rejected with their line number.
    """
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", path=path) from exc

    by_trial: dict[str, list[InferenceRecord]] = {}
    seen = set()
    for lineno, text in enumerate(lines, start=1):
        if not text.strip() or text.startswith("#"):
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", path, lineno) from None
        try:
            trial_id = str(obj["trial_id"])
            index = int(obj["index"])
            ts = [int(obj[k]) for k in ("t0_ns", "t1_ns", "t2_ns", "t3_ns")]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"missing or bad field: {exc}", path, lineno) from None
        name = violated_ordering(*ts)
        if name:
            raise ParseError(
                f"timestamps violate {name} (t0={ts[0]} t1={ts[1]} t2={ts[2]} t3={ts[3]})",
                path,
                lineno,
            )
        key = (trial_id, index)
        if key in seen:
            raise ParseError(f"duplicate (trial_id, index) = {key}", path, lineno)
        seen.add(key)
        by_trial.setdefault(trial_id, []).append(InferenceRecord(trial_id, index, *ts))

    out = []
    for trial_id, records in by_trial.items():
        out.extend(sorted(records, key=lambda r: r.index))
    return out


def parse_profile_log(path) -> list[ProfileSample]:
    """Parse a line-delimited GPIO call profile log.

    Warm-up iterations are included; excluding them is the analysis step's
    job.  Nonpositive durations are parse errors.
    """
    path = Path(path)
    try:
        lines = path.read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc}", path=path) from exc

    samples = []
    for lineno, text in enumerate(lines, start=1):
        if not text.strip() or text.startswith("#"):
            continue
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON: {exc.msg}", path, lineno) from None
        try:
            sample = ProfileSample(
                iteration=int(obj["iteration"]),
                high_ns=int(obj["high_ns"]),
                low_ns=int(obj["low_ns"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad profile sample: {exc}", path, lineno) from None
        samples.append(sample)
    return samples


def group_by_trial(records: list[InferenceRecord]) -> list[tuple[str, list[InferenceRecord]]]:
    """Group records by trial_id in first-appearance order."""
    by_trial: dict[str, list[InferenceRecord]] = {}
    for record in records:
        by_trial.setdefault(record.trial_id, []).append(record)
    return list(by_trial.items())


# ---------------------------------------------------------------------------
# writers (round-trip counterparts of the parsers)
# ---------------------------------------------------------------------------


def write_edge_capture(capture: EdgeCapture, path, format: str = "native_ns") -> None:
    """Serialize a capture; native_ns round-trips losslessly through the parser."""
    lines = [
        f"# sample_rate_hz={capture.sample_rate_hz}",
        f"# source_id={capture.source_id}",
    ]
    if format == "native_ns":
        lines.append("timestamp_ns,direction")
        lines.extend(f"{e.timestamp_ns},{e.direction}" for e in capture.events)
    elif format == "analyzer_seconds":
        lines.append("time_s,level")
        for e in capture.events:
            seconds = Decimal(e.timestamp_ns).scaleb(-9)
            lines.append(f"{seconds:.9f},{1 if e.direction == RISING else 0}")
    else:
        raise ValueError(f"unknown edge capture format {format!r}")
    Path(path).write_text("\n".join(lines) + "\n")


def write_orchestrator_log(records: list[InferenceRecord], path) -> None:
    lines = [
        json.dumps(
            {
                "trial_id": r.trial_id,
                "index": r.index,
                "t0_ns": r.t0_ns,
                "t1_ns": r.t1_ns,
                "t2_ns": r.t2_ns,
                "t3_ns": r.t3_ns,
            }
        )
        for r in records
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def write_profile_log(samples: list[ProfileSample], path) -> None:
    lines = [
        json.dumps({"iteration": s.iteration, "high_ns": s.high_ns, "low_ns": s.low_ns})
        for s in samples
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))
