"""Edge-stream cleanup and pulse assembly.

Pipeline order: glitch_filter discards edges bounding sub-threshold dwells,
pair_edges matches rising to falling edges in strict time order,
segment_trials splits a long capture at large inter-pulse gaps, and align
zips pulse segments with inference records one-to-one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from wirecal.errors import AlignmentError
from wirecal.ingest import FALLING, RISING, EdgeCapture, EdgeEvent, InferenceRecord

# Violation kinds reported by pair_edges.
CONSECUTIVE_SAME_DIRECTION = "consecutive-same-direction"
LEADING_FALL = "leading-fall"
TRAILING_RISE = "trailing-rise"

DEFAULT_GAP_THRESHOLD_NS = 1_000_000_000
DEFAULT_WARMUP_EXCLUDE = 1


@dataclass(frozen=True)
class PulsePair:
    """One rising edge matched with the next falling edge."""

    rise_ns: int
    fall_ns: int

    def __post_init__(self):
        if self.fall_ns <= self.rise_ns:
            raise ValueError(f"fall {self.fall_ns} must be after rise {self.rise_ns}")

    @property
    def width_ns(self) -> int:
        return self.fall_ns - self.rise_ns


@dataclass(frozen=True)
class PairingOutcome:
    """Result of strict-order pairing: pairs plus any ordering violations.

    status is "fail" iff any violation was recorded or an expected pair
    count was provided and missed; pairs are still populated on failure so
    a count is always reportable alongside FAIL.
    """

    pairs: tuple[PulsePair, ...]
    violations: tuple[tuple[int, str], ...]
    expected_count: int | None = None
    status: str = field(init=False)

    def __post_init__(self):
        count_ok = self.expected_count is None or len(self.pairs) == self.expected_count
        status = "pass" if (not self.violations and count_ok) else "fail"
        object.__setattr__(self, "status", status)

    @property
    def pair_count(self) -> int:
        return len(self.pairs)


@dataclass(frozen=True)
class AlignedTrial:
    """One trial's inference records zipped 1:1 with its wire pulses.

    items keeps every inference including warm-up; effective_items drops the
    first warmup_excluded entries and is what statistics consume.
    """

    trial_id: str
    items: tuple[tuple[InferenceRecord, PulsePair], ...]
    warmup_excluded: int

    @property
    def effective_items(self) -> tuple[tuple[InferenceRecord, PulsePair], ...]:
        return self.items[self.warmup_excluded:]


def glitch_filter(capture: EdgeCapture, threshold_ns: int) -> EdgeCapture:
    """Drop edge pairs bounding any dwell strictly shorter than threshold_ns.

    Dwells are the intervals between consecutive edges; the unbounded level
    before the first edge and after the last are never candidates.  Removal
    repeats until every remaining interior dwell is >= threshold_ns, so the
    operation is idempotent at a fixed threshold.  Threshold 0 returns the
    capture unchanged.

    Implemented as a single left-to-right sweep: when the incoming edge sits
    closer than the threshold to the last kept edge, both are discarded.
    Because every dwell to the left has already been verified, the merged
    dwell created by a removal can never itself be sub-threshold, which makes
    the sweep equivalent to the repeat-until-stable definition.
    """
    if threshold_ns < 0:
        raise ValueError("threshold_ns must be >= 0")
    if threshold_ns == 0:
        return capture
    kept: list[EdgeEvent] = []
    for event in capture.events:
        if kept and event.timestamp_ns - kept[-1].timestamp_ns < threshold_ns:
            kept.pop()
        else:
            kept.append(event)
    return EdgeCapture(
        events=tuple(kept),
        sample_rate_hz=capture.sample_rate_hz,
        source_id=capture.source_id,
    )


def pair_edges(capture: EdgeCapture, expected_count: int | None = None) -> PairingOutcome:
    """Pair rising and falling edges in strict time order.

    A falling edge with no open pulse records a leading-fall violation and is
    skipped.  A rising edge while a pulse is already open records a
    consecutive-same-direction violation, closes nothing, and starts a new
    open pulse, so pairing recovers and a count stays reportable.  An open
    pulse at the end of the capture records trailing-rise.
    """
    pairs: list[PulsePair] = []
    violations: list[tuple[int, str]] = []
    open_rise: int | None = None
    for event in capture.events:
        if event.direction == RISING:
            if open_rise is not None:
                violations.append((event.timestamp_ns, CONSECUTIVE_SAME_DIRECTION))
            open_rise = event.timestamp_ns
        else:
            if open_rise is None:
                violations.append((event.timestamp_ns, LEADING_FALL))
                continue
            pairs.append(PulsePair(rise_ns=open_rise, fall_ns=event.timestamp_ns))
            open_rise = None
    if open_rise is not None:
        violations.append((open_rise, TRAILING_RISE))
    return PairingOutcome(
        pairs=tuple(pairs),
        violations=tuple(violations),
        expected_count=expected_count,
    )


def segment_trials(
    pairs: list[PulsePair] | tuple[PulsePair, ...],
    gap_threshold_ns: int = DEFAULT_GAP_THRESHOLD_NS,
) -> list[list[PulsePair]]:
    """Split a time-ordered pulse list into trial segments at large gaps.

    A new segment starts whenever the gap from one pulse's fall to the next
    pulse's rise exceeds gap_threshold_ns.  Inter-inference spacing is
    milliseconds while inter-trial cooldown is minutes, so the default 1 s
    threshold is unambiguous in practice.
    """
    if gap_threshold_ns <= 0:
        raise ValueError("gap_threshold_ns must be positive")
    segments: list[list[PulsePair]] = []
    current: list[PulsePair] = []
    for pair in pairs:
        if current and pair.rise_ns - current[-1].fall_ns > gap_threshold_ns:
            segments.append(current)
            current = []
        current.append(pair)
    if current:
        segments.append(current)
    return segments


def align(
    trial_groups: list[tuple[str, list[InferenceRecord]]],
    segments: list[list[PulsePair]],
    warmup_exclude: int = DEFAULT_WARMUP_EXCLUDE,
) -> list[AlignedTrial]:
    """Zip each trial's records with its pulse segment, in order.

    Trials and segments are matched positionally (both are chronological).
    Any count mismatch is an AlignmentError naming the trial and both counts;
    order-based matching means there is no partial recovery.  warmup_exclude
    items are kept in the alignment but excluded from effective statistics.
    """
    if warmup_exclude < 0:
        raise ValueError("warmup_exclude must be >= 0")
    if len(trial_groups) != len(segments):
        raise AlignmentError(
            f"{len(trial_groups)} trials in log but {len(segments)} pulse segments in capture"
        )
    aligned = []
    for (trial_id, records), segment in zip(trial_groups, segments):
        if len(records) != len(segment):
            raise AlignmentError(
                f"trial {trial_id}: {len(records)} records vs {len(segment)} pulses"
            )
        aligned.append(
            AlignedTrial(
                trial_id=trial_id,
                items=tuple(zip(records, segment)),
                warmup_excluded=min(warmup_exclude, len(records)),
            )
        )
    return aligned
