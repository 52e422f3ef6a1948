#!/usr/bin/env python3
"""Tracking calibration constants across sessions and flagging drift.

Records session-level calibrations in a store file, then reports the
spread of constants per platform.  One platform reproduces to within a
fraction of a microsecond across sessions; the other spans ~6 us, so its
constant is an empirical band and per-session recalibration is the safe
policy there.
"""

import tempfile
from pathlib import Path

from _common import calibrated_series

from wirecal import CalibrationStore, OperatingStateTag, PlatformCalibration, SessionEntry
from wirecal.reporting import render_drift, us
from wirecal.store import LATEST_SESSION, POOLED_MEAN

# historical sessions: (platform, session, constant us, trials, created)
HISTORY = [
    ("pi", "apr-01", -92.12, 2, "2026-04-01T09:00:00Z"),
    ("pi", "apr-20", -86.73, 3, "2026-04-20T09:00:00Z"),
    ("pi", "may-05", -86.13, 10, "2026-05-05T09:00:00Z"),
    ("jetson", "apr-01", -20.14, 2, "2026-04-01T09:00:00Z"),
    ("jetson", "may-05", -20.00, 10, "2026-05-05T09:00:00Z"),
]

store_path = Path(tempfile.mkdtemp()) / "store.json"
store = CalibrationStore(store_path)
for platform, session, c_p_us, n, created in HISTORY:
    tag = OperatingStateTag(platform, session, captured_at=created)
    store.record_session(
        SessionEntry(
            tag=tag,
            calibration=PlatformCalibration(
                platform=tag,
                c_p_ns=c_p_us * 1000,
                trial_medians_ns=(c_p_us * 1000,) * n,
                std_range_ns=None,
                n_trials=n,
                tolerance_ns=None,
                k_factor=2.5,
            ),
            created_at=created,
            source_digest=f"sha256:{platform}-{session}",
        )
    )
print(f"recorded {len(store.entries)} sessions in {store_path}\n")

for platform in ("pi", "jetson"):
    print(render_drift(store.drift_report(platform, threshold_ns=2_000)))
    latest = store.lookup_constant(platform, LATEST_SESSION)
    pooled = store.lookup_constant(platform, POOLED_MEAN)
    print(f"lookup: latest_session {us(latest.c_p_ns)} us, "
          f"pooled_mean {us(pooled.c_p_ns)} us (weighted by trials)\n")

print("a freshly calibrated session can be appended with:")
print("  wirecal calibrate --capture ... --log ... --platform pi --session-id S4 --record")
