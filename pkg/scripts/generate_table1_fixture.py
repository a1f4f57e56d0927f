#!/usr/bin/env python3
"""Regenerate the measured-table test fixtures.

Writes a synthetic measurement CSV whose per-frequency patterns are exact
parabolas in dB. Parabolic peak refinement recovers a parabola's vertex
exactly, so the refined peaks land on the reference azimuth/power values
by construction, and the curvature is chosen so the -3 dB width is exactly
14 degrees. The golden KPI file is the CLI's output on that CSV.

Run from the repository root:
    python scripts/generate_table1_fixture.py
"""

from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "tests" / "data"

# (frequency_hz, peak azimuth deg, peak power dBi)
ROWS = [
    (27.5e9, 9.52, -6.9),
    (28.5e9, 9.26, -7.5),
    (29.5e9, 9.34, -6.9),
]
HPBW_DEG = 14.0
CURVATURE = 3.0 / (HPBW_DEG / 2.0) ** 2  # dB per deg^2; -3 dB at +/- HPBW/2

GRID_START, GRID_STOP, GRID_STEP = -30.0, 30.0, 0.05


def main() -> int:
    DATA.mkdir(parents=True, exist_ok=True)
    angles = np.linspace(
        GRID_START, GRID_STOP, int(round((GRID_STOP - GRID_START) / GRID_STEP)) + 1
    )
    lines = ["# squintkit-measurements v1", "frequency_hz,azimuth_deg,power_dbi"]
    for freq, peak_az, peak_db in ROWS:
        gains = peak_db - CURVATURE * (angles - peak_az) ** 2
        for angle, gain in zip(angles, gains):
            lines.append(f"{freq:.0f},{angle:.10g},{gain:.10g}")
    csv_path = DATA / "table1_measurements.csv"
    csv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {csv_path}")

    # Golden KPI output comes from the CLI itself so the byte-identity test
    # compares like with like.
    sys.path.insert(0, str(ROOT / "src"))
    from squintkit.cli import main as cli_main

    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        rc = cli_main(["ingest-kpi", str(csv_path), "--out", tmp])
        if rc != 0:
            return rc
        golden = (Path(tmp) / "kpi.csv").read_text(encoding="utf-8")
    golden_path = DATA / "table1_kpi_golden.csv"
    golden_path.write_text(golden, encoding="utf-8")
    print(f"wrote {golden_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
