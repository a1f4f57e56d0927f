"""Measured-pattern CSV ingestion.

Schema: header ``frequency_hz,azimuth_deg,power_dbi``, UTF-8, LF line
endings, dot decimals. Lines starting with '#' are comments. Every
frequency must carry the same uniformly spaced azimuth samples; row order
is irrelevant (ingestion sorts), and the center frequency defaults to the
middle of the sorted frequency list.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import AlignmentError, GridError, ValidationError
from .patterns import AzimuthGrid, BeamPattern, FrequencyBand, PatternSet

CSV_HEADER = ("frequency_hz", "azimuth_deg", "power_dbi")

# Relative tolerance when checking that azimuth samples are evenly spaced.
_SPACING_RTOL = 1e-6


@dataclass(frozen=True)
class MeasurementRecord:
    """One measured point: frequency, azimuth, and received power."""

    frequency_hz: float
    azimuth_deg: float
    power_dbi: float

    def __post_init__(self):
        for name in ("frequency_hz", "azimuth_deg", "power_dbi"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")


def read_measurement_rows(path: str | Path) -> list[MeasurementRecord]:
    """Parse the CSV into records, enforcing the schema and uniqueness."""
    path = Path(path)
    if not path.is_file():
        raise ValidationError(f"measurement file not found: {path}")
    records = []
    seen: set[tuple[float, float]] = set()
    with path.open(newline="", encoding="utf-8") as handle:
        rows = csv.reader(line for line in handle if not line.startswith("#"))
        header = next(rows, None)
        if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
            raise ValidationError(
                f"bad measurement header {header}; expected {','.join(CSV_HEADER)}"
            )
        for lineno, row in enumerate(rows, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise ValidationError(f"row {lineno}: expected 3 fields, got {len(row)}")
            try:
                freq, azimuth, power = (float(v) for v in row)
            except ValueError as exc:
                raise ValidationError(f"row {lineno}: {exc}") from exc
            key = (freq, azimuth)
            if key in seen:
                raise ValidationError(
                    f"row {lineno}: duplicate (frequency, azimuth) pair {key}"
                )
            seen.add(key)
            records.append(MeasurementRecord(freq, azimuth, power))
    if not records:
        raise ValidationError(f"no measurement rows in {path}")
    return records


def _grid_from_azimuths(azimuths: np.ndarray) -> AzimuthGrid:
    if azimuths.size < 2:
        raise GridError("each frequency needs at least 2 azimuth samples")
    step = (azimuths[-1] - azimuths[0]) / (azimuths.size - 1)
    if step <= 0:
        raise GridError("azimuth samples must be strictly increasing")
    diffs = np.diff(azimuths)
    if np.max(np.abs(diffs - step)) > _SPACING_RTOL * abs(step):
        raise GridError(
            "azimuth samples are not uniformly spaced "
            f"(max deviation {np.max(np.abs(diffs - step)):.3g} deg)"
        )
    return AzimuthGrid(float(azimuths[0]), float(azimuths[-1]), float(step))


def ingest_measurements(path: str | Path, cf_hz: float | None = None) -> PatternSet:
    """Group measured rows into a PatternSet on a shared uniform grid.

    ``cf_hz`` overrides the center-frequency choice; it must match one of
    the measured frequencies exactly.
    """
    records = read_measurement_rows(path)
    by_freq: dict[float, list[MeasurementRecord]] = {}
    for rec in records:
        by_freq.setdefault(rec.frequency_hz, []).append(rec)
    freqs = sorted(by_freq)

    reference = sorted(r.azimuth_deg for r in by_freq[freqs[0]])
    offenders = [
        f for f in freqs if sorted(r.azimuth_deg for r in by_freq[f]) != reference
    ]
    if offenders:
        raise AlignmentError(
            "frequencies with azimuth samples differing from the "
            f"{freqs[0]} Hz reference: {offenders}",
            offenders,
        )
    grid = _grid_from_azimuths(np.asarray(reference))

    if cf_hz is None:
        center = freqs[(len(freqs) - 1) // 2]
    else:
        if cf_hz not in by_freq:
            raise ValidationError(
                f"cf override {cf_hz} Hz is not one of the measured frequencies {freqs}"
            )
        center = cf_hz
    band = FrequencyBand(
        center_hz=center, lower_hz=freqs[0], upper_hz=freqs[-1], sample_count=len(freqs)
    )
    patterns = []
    for f in freqs:
        ordered = sorted(by_freq[f], key=lambda r: r.azimuth_deg)
        patterns.append(
            BeamPattern(
                frequency_hz=f,
                grid=grid,
                gain_dbi=np.array([r.power_dbi for r in ordered]),
            )
        )
    return PatternSet(patterns=tuple(patterns), band=band)
