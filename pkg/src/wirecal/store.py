"""Persistent per-platform, per-session calibration store with drift reports.

The store is a single human-readable JSON document (versioned schema), not a
database: calibration data is desk-scale and a diff-able file doubles as
provenance.  Writes are serialized through the store object and saved
atomically; readers always see a consistent snapshot.
"""

from __future__ import annotations

import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from wirecal.errors import ConfigError, StoreConflictError
from wirecal.ingest import OperatingStateTag
from wirecal.residual import PlatformCalibration

SCHEMA_VERSION = 1

LATEST_SESSION = "latest_session"
POOLED_MEAN = "pooled_mean"
POLICIES = (LATEST_SESSION, POOLED_MEAN)

DEFAULT_DRIFT_THRESHOLD_NS = 2_000.0  # 2 us: separates session drift from reproduction noise

STORE_ENV_VAR = "WIRECAL_STORE"
DEFAULT_STORE_PATH = "wirecal-store.json"


@dataclass(frozen=True)
class SessionEntry:
    """One recorded calibration session, keyed by (platform, session_id)."""

    tag: OperatingStateTag
    calibration: PlatformCalibration
    created_at: str
    source_digest: str

    @property
    def key(self) -> tuple[str, str]:
        return (self.tag.platform, self.tag.session_id)


@dataclass(frozen=True)
class DriftReport:
    """Spread of session-level constants for one platform."""

    platform: str
    session_ids: tuple[str, ...]
    session_constants_ns: tuple[float, ...]
    range_ns: float
    threshold_ns: float
    flagged: bool


def _calibration_to_doc(cal: PlatformCalibration) -> dict:
    return {
        "platform": cal.platform.platform,
        "session_id": cal.platform.session_id,
        "state_label": cal.platform.state_label,
        "captured_at": cal.platform.captured_at,
        "c_p_ns": cal.c_p_ns,
        "trial_medians_ns": list(cal.trial_medians_ns),
        "std_range_ns": list(cal.std_range_ns) if cal.std_range_ns else None,
        "n_trials": cal.n_trials,
        "tolerance_ns": cal.tolerance_ns,
        "k_factor": cal.k_factor,
    }


def _calibration_from_doc(doc: dict) -> PlatformCalibration:
    return PlatformCalibration(
        platform=OperatingStateTag(
            platform=doc["platform"],
            session_id=doc["session_id"],
            state_label=doc["state_label"],
            captured_at=doc["captured_at"],
        ),
        c_p_ns=doc["c_p_ns"],
        trial_medians_ns=tuple(doc["trial_medians_ns"]),
        std_range_ns=tuple(doc["std_range_ns"]) if doc["std_range_ns"] else None,
        n_trials=doc["n_trials"],
        tolerance_ns=doc["tolerance_ns"],
        k_factor=doc["k_factor"],
    )


class CalibrationStore:
    """Append-style session store backed by one JSON file.

    Re-recording identical content is idempotent; the same key with
    different content is a conflict.  Entries keep creation order.
    """

    def __init__(self, path):
        self.path = Path(path)
        self._entries: list[SessionEntry] = []
        if self.path.exists():
            self._load()

    def _load(self):
        doc = json.loads(self.path.read_text())
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise ConfigError(
                f"{self.path}: unsupported store schema {doc.get('schema_version')!r}"
            )
        self._entries = [
            SessionEntry(
                tag=OperatingStateTag(
                    platform=e["calibration"]["platform"],
                    session_id=e["calibration"]["session_id"],
                    state_label=e["calibration"]["state_label"],
                    captured_at=e["calibration"]["captured_at"],
                ),
                calibration=_calibration_from_doc(e["calibration"]),
                created_at=e["created_at"],
                source_digest=e["source_digest"],
            )
            for e in doc["entries"]
        ]

    def save(self):
        doc = {
            "schema_version": SCHEMA_VERSION,
            "entries": [
                {
                    "created_at": e.created_at,
                    "source_digest": e.source_digest,
                    "calibration": _calibration_to_doc(e.calibration),
                }
                for e in self._entries
            ],
        }
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".store-", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(text)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @property
    def entries(self) -> tuple[SessionEntry, ...]:
        return tuple(self._entries)

    def sessions_for(self, platform: str) -> list[SessionEntry]:
        return [e for e in self._entries if e.tag.platform == platform]

    def record_session(self, entry: SessionEntry) -> str:
        """Append a session, returning its identifier '<platform>/<session_id>'."""
        identifier = f"{entry.tag.platform}/{entry.tag.session_id}"
        for existing in self._entries:
            if existing.key == entry.key:
                same = (
                    existing.source_digest == entry.source_digest
                    and existing.calibration == entry.calibration
                )
                if same:
                    return identifier
                raise StoreConflictError(
                    f"session {identifier} already recorded with different content "
                    f"(digest {existing.source_digest} vs {entry.source_digest})"
                )
        self._entries.append(entry)
        self.save()
        return identifier

    def drift_report(
        self, platform: str, threshold_ns: float = DEFAULT_DRIFT_THRESHOLD_NS
    ) -> DriftReport:
        """Range of session constants for a platform, flagged past the threshold."""
        sessions = self.sessions_for(platform)
        if not sessions:
            raise ConfigError(f"no sessions recorded for platform {platform!r}")
        constants = tuple(e.calibration.c_p_ns for e in sessions)
        spread = max(constants) - min(constants)
        return DriftReport(
            platform=platform,
            session_ids=tuple(e.tag.session_id for e in sessions),
            session_constants_ns=constants,
            range_ns=spread,
            threshold_ns=threshold_ns,
            flagged=spread > threshold_ns,
        )

    def lookup_constant(
        self, platform: str, policy: str = LATEST_SESSION
    ) -> PlatformCalibration:
        """Resolve a platform's calibration by policy.

        latest_session: the entry with the greatest created_at (ties broken
        by session_id lexicographic order).  pooled_mean: session constants
        averaged with per-session trial counts as weights; the pooled
        tolerance is the most conservative (largest) session tolerance.
        """
        sessions = self.sessions_for(platform)
        if not sessions:
            raise ConfigError(f"no sessions recorded for platform {platform!r}")
        if policy == LATEST_SESSION:
            best = max(sessions, key=lambda e: (e.created_at, e.tag.session_id))
            return best.calibration
        if policy == POOLED_MEAN:
            weights = [e.calibration.n_trials for e in sessions]
            total = sum(weights)
            pooled = sum(
                w * e.calibration.c_p_ns for w, e in zip(weights, sessions)
            ) / total
            medians = tuple(
                m for e in sessions for m in e.calibration.trial_medians_ns
            )
            ranges = [e.calibration.std_range_ns for e in sessions if e.calibration.std_range_ns]
            tolerances = [
                e.calibration.tolerance_ns
                for e in sessions
                if e.calibration.tolerance_ns is not None
            ]
            latest = max(sessions, key=lambda e: (e.created_at, e.tag.session_id))
            return PlatformCalibration(
                platform=latest.tag,
                c_p_ns=pooled,
                trial_medians_ns=medians,
                std_range_ns=(
                    (min(r[0] for r in ranges), max(r[1] for r in ranges)) if ranges else None
                ),
                n_trials=total,
                tolerance_ns=max(tolerances) if tolerances else None,
                k_factor=latest.calibration.k_factor,
            )
        raise ConfigError(f"unknown lookup policy {policy!r} (want one of {POLICIES})")


def resolve_store_path(flag_value=None) -> Path:
    """CLI flag beats the environment variable beats the working-directory default."""
    if flag_value:
        return Path(flag_value)
    return Path(os.environ.get(STORE_ENV_VAR, DEFAULT_STORE_PATH))
