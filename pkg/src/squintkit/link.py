"""Link-level estimates: path loss, MCS throughput, and per-subband analysis.

The wideband channel is split into equal subbands; each subband sees the
antenna gain of its own frequency at a fixed receive direction, so a
squinted beam loses throughput at the band edges while a squint-free one
keeps the flat-channel rate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ValidationError
from .metrics import refine_peak
from .patterns import SPEED_OF_LIGHT, PatternSet, interpolate_gain

NOISE_FLOOR_DBM_PER_HZ = -174.0
"""Thermal noise density at 290 K."""


@dataclass(frozen=True)
class LinkConfig:
    """Carrier, bandwidth, geometry, and overhead for throughput estimates."""

    carrier_hz: float = 28.5e9
    bandwidth_hz: float = 800e6
    distance_m: float = 5.0
    tx_power_dbm: float = 30.0
    overhead_fraction: float = 0.35
    noise_figure_db: float = 7.0

    def __post_init__(self):
        if not self.carrier_hz > 0:
            raise ValidationError(f"carrier_hz must be > 0, got {self.carrier_hz}")
        if not self.bandwidth_hz > 0:
            raise ValidationError(f"bandwidth_hz must be > 0, got {self.bandwidth_hz}")
        if not self.distance_m > 0:
            raise ValidationError(f"distance_m must be > 0, got {self.distance_m}")
        if not 0.0 <= self.overhead_fraction < 1.0:
            raise ValidationError(
                f"overhead_fraction must be in [0, 1), got {self.overhead_fraction}"
            )
        if not np.isfinite(self.tx_power_dbm):
            raise ValidationError("tx_power_dbm must be finite")
        if not np.isfinite(self.noise_figure_db):
            raise ValidationError("noise_figure_db must be finite")


@dataclass(frozen=True)
class McsScheme:
    """Modulation order (bits/symbol), code rate, and the SNR needed to run it."""

    modulation_order: int
    code_rate: Fraction
    min_snr_db: float
    name: str = ""

    def __post_init__(self):
        if self.modulation_order not in (2, 4, 6, 8):
            raise ValidationError(
                f"modulation_order must be one of 2, 4, 6, 8, got {self.modulation_order}"
            )
        rate = self.code_rate
        if not isinstance(rate, Fraction):
            rate = Fraction(rate).limit_denominator(10000) if isinstance(rate, float) else Fraction(rate)
            object.__setattr__(self, "code_rate", rate)
        if not 0 < rate <= 1:
            raise ValidationError(f"code_rate must be in (0, 1], got {rate}")


DEFAULT_MCS_LADDER: tuple[McsScheme, ...] = (
    McsScheme(2, Fraction(1, 2), 5.0, "QPSK-1/2"),
    McsScheme(4, Fraction(1, 2), 11.0, "16QAM-1/2"),
    McsScheme(6, Fraction(5, 6), 20.0, "64QAM-5/6"),
)
"""Illustrative ladder; thresholds are engineering defaults, fully configurable."""


def free_space_path_loss(distance_m: float, frequency_hz: float) -> float:
    """Friis free-space loss 20 log10(4 pi d f / c), in dB."""
    if not distance_m > 0 or not frequency_hz > 0:
        raise ValidationError("distance_m and frequency_hz must be > 0")
    return float(20.0 * np.log10(4.0 * np.pi * distance_m * frequency_hz / SPEED_OF_LIGHT))


def _mcs_rate_bps(bandwidth_hz: float, mcs: McsScheme, overhead_fraction: float) -> float:
    # Multiply numerator before denominator so exact rationals stay exact.
    raw = bandwidth_hz * mcs.modulation_order * mcs.code_rate.numerator / mcs.code_rate.denominator
    return raw * (1.0 - overhead_fraction)


def throughput(config: LinkConfig, mcs: McsScheme) -> float:
    """Flat-channel throughput in bits/s for one MCS over the whole bandwidth."""
    return _mcs_rate_bps(config.bandwidth_hz, mcs, config.overhead_fraction)


@dataclass(frozen=True)
class SubbandReport:
    """One subband's SNR, selected MCS (None if below every threshold), and rate."""

    center_hz: float
    snr_db: float
    mcs: McsScheme | None
    throughput_bps: float


@dataclass(frozen=True)
class BandThroughput:
    subbands: tuple[SubbandReport, ...]
    total_bps: float


def _gain_at(pattern_set: PatternSet, frequency_hz: float, azimuth_deg: float) -> float:
    """Pattern gain at one frequency and azimuth, linear in f between patterns."""
    freqs = pattern_set.frequencies
    gains = [interpolate_gain(p, azimuth_deg) for p in pattern_set.patterns]
    if frequency_hz <= freqs[0]:
        return gains[0]
    if frequency_hz >= freqs[-1]:
        return gains[-1]
    i = int(np.searchsorted(freqs, frequency_hz))
    if freqs[i] == frequency_hz:
        return gains[i]
    frac = (frequency_hz - freqs[i - 1]) / (freqs[i] - freqs[i - 1])
    return gains[i - 1] + frac * (gains[i] - gains[i - 1])


def band_throughput(
    pattern_set: PatternSet,
    config: LinkConfig,
    mcs_table: tuple[McsScheme, ...] = DEFAULT_MCS_LADDER,
    subbands: int = 8,
    boresight_deg: float | None = None,
) -> BandThroughput:
    """Split the channel into equal subbands and rate each one.

    Per subband: SNR = tx power + pattern gain at the receive direction
    - free-space loss - thermal floor over the subband; the highest MCS
    whose threshold fits is selected (none fitting contributes 0 bits/s).
    ``boresight_deg`` defaults to the refined center-frequency beam peak.
    """
    if not mcs_table:
        raise ValidationError("mcs_table must not be empty")
    thresholds = [m.min_snr_db for m in mcs_table]
    if any(b < a for a, b in zip(thresholds, thresholds[1:])):
        raise ValidationError("mcs_table must be sorted by min_snr_db ascending")
    if int(subbands) != subbands or subbands < 1:
        raise ValidationError(f"subbands must be an integer >= 1, got {subbands}")
    lo = config.carrier_hz - config.bandwidth_hz / 2.0
    hi = config.carrier_hz + config.bandwidth_hz / 2.0
    if lo < pattern_set.band.lower_hz or hi > pattern_set.band.upper_hz:
        raise ValidationError(
            f"pattern set [{pattern_set.band.lower_hz}, {pattern_set.band.upper_hz}] Hz "
            f"does not span the channel [{lo}, {hi}] Hz"
        )
    if boresight_deg is None:
        boresight_deg = refine_peak(pattern_set.center_pattern).azimuth_deg

    subband_hz = config.bandwidth_hz / subbands
    noise_dbm = (
        NOISE_FLOOR_DBM_PER_HZ + 10.0 * np.log10(subband_hz) + config.noise_figure_db
    )
    reports = []
    total = 0.0
    for k in range(subbands):
        center = lo + (k + 0.5) * subband_hz
        gain = _gain_at(pattern_set, center, boresight_deg)
        snr = (
            config.tx_power_dbm
            + gain
            - free_space_path_loss(config.distance_m, center)
            - noise_dbm
        )
        chosen = None
        for mcs in mcs_table:
            if mcs.min_snr_db <= snr:
                chosen = mcs
        rate = _mcs_rate_bps(subband_hz, chosen, config.overhead_fraction) if chosen else 0.0
        reports.append(SubbandReport(center_hz=center, snr_db=float(snr), mcs=chosen, throughput_bps=rate))
        total += rate
    return BandThroughput(subbands=tuple(reports), total_bps=total)
