"""Beam-squint KPI extraction: peak, HPBW, AD/PD deltas, and retained-power DPBQ.

Sign conventions follow the measured-table convention: AD and PD are the
center-frequency value minus the operating-frequency value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BeamwidthUndefinedError,
    BoundaryPeakError,
    SingularityError,
    ValidationError,
)
from .patterns import BeamPattern, PatternSet

SINC_NORMALIZED = "normalized"
SINC_UNNORMALIZED = "unnormalized"
DOMAIN_DECIBEL = "decibel"
DOMAIN_LINEAR = "linear"

DPBQ_SINC_SCALE = 0.6238
"""Fixed scale applied to AD/HPBW inside the DPBQ sinc factor."""


@dataclass(frozen=True)
class DpbqConvention:
    """Resolves the two ambiguities in the DPBQ formula.

    sinc_kind: "normalized" (sin(pi x)/(pi x)) or "unnormalized" (sin x / x).
    gain_domain: "decibel" plugs dB gains straight into the formula,
    "linear" evaluates it on linear power ratios.
    """

    sinc_kind: str = SINC_NORMALIZED
    gain_domain: str = DOMAIN_DECIBEL

    def __post_init__(self):
        if self.sinc_kind not in (SINC_NORMALIZED, SINC_UNNORMALIZED):
            raise ValidationError(f"unknown sinc_kind {self.sinc_kind!r}")
        if self.gain_domain not in (DOMAIN_DECIBEL, DOMAIN_LINEAR):
            raise ValidationError(f"unknown gain_domain {self.gain_domain!r}")


DEFAULT_CONVENTION = DpbqConvention()
"""Normalized sinc, decibel domain: the pair that reproduces the measured table."""


@dataclass(frozen=True)
class PeakEstimate:
    """Refined peak location and level; degenerate marks a flat-top plateau."""

    azimuth_deg: float
    gain_dbi: float
    degenerate: bool = False


@dataclass(frozen=True)
class KpiRow:
    """One per-frequency KPI record."""

    frequency_hz: float
    peak_azimuth_deg: float
    peak_gain_dbi: float
    hpbw_deg: float
    ad_deg: float
    pd_db: float
    dpbq_percent: float

    def __post_init__(self):
        if not self.hpbw_deg > 0:
            raise ValidationError(f"hpbw_deg must be > 0, got {self.hpbw_deg}")


def refine_peak(pattern: BeamPattern) -> PeakEstimate:
    """Locate the pattern peak to sub-grid precision.

    Fits a parabola through the three dB samples around the grid argmax and
    returns the vertex. A plateau of three or more equal maxima returns the
    plateau center with ``degenerate=True``.
    """
    gains = pattern.gain_dbi
    angles = pattern.angles_deg()
    if gains.max() == gains.min():
        raise ValidationError("pattern is constant; no peak exists")
    i = int(np.argmax(gains))
    peak = gains[i]
    lo = i
    while lo > 0 and gains[lo - 1] == peak:
        lo -= 1
    hi = i
    while hi < gains.size - 1 and gains[hi + 1] == peak:
        hi += 1
    if lo == 0 or hi == gains.size - 1:
        raise BoundaryPeakError(
            f"pattern peak at grid boundary ({angles[i]} deg); widen the grid"
        )
    if hi - lo + 1 >= 3:
        center = 0.5 * (angles[lo] + angles[hi])
        return PeakEstimate(float(center), float(peak), degenerate=True)
    y_minus, y0, y_plus = gains[lo - 1], gains[lo], gains[lo + 1]
    denom = y_minus - 2.0 * y0 + y_plus
    step = angles[1] - angles[0]
    offset = 0.5 * (y_minus - y_plus) / denom
    vertex_az = angles[lo] + offset * step
    vertex_gain = y0 - 0.25 * (y_minus - y_plus) * offset
    return PeakEstimate(float(vertex_az), float(vertex_gain))


def half_power_beamwidth(pattern: BeamPattern) -> float:
    """Angular separation of the -3 dB crossings around the refined peak.

    Crossings are located by linear interpolation between the bracketing
    samples on each side of the peak.
    """
    est = refine_peak(pattern)
    gains = pattern.gain_dbi
    angles = pattern.angles_deg()
    level = est.gain_dbi - 3.0
    i = int(np.argmax(gains))

    j = i
    while j > 0 and gains[j] > level:
        j -= 1
    if gains[j] > level:
        raise BeamwidthUndefinedError(
            "pattern never drops 3 dB below the peak on the left side"
        )
    left = angles[j] + (angles[j + 1] - angles[j]) * (level - gains[j]) / (
        gains[j + 1] - gains[j]
    )

    j = i
    while j < gains.size - 1 and gains[j] > level:
        j += 1
    if gains[j] > level:
        raise BeamwidthUndefinedError(
            "pattern never drops 3 dB below the peak on the right side"
        )
    right = angles[j - 1] + (angles[j] - angles[j - 1]) * (level - gains[j - 1]) / (
        gains[j] - gains[j - 1]
    )
    return float(right - left)


def squint_deltas(pattern_set: PatternSet) -> list[tuple[float, float]]:
    """Per-frequency (AD, PD) relative to the center frequency.

    AD(f) = peak_azimuth(CF) - peak_azimuth(f);
    PD(f) = peak_gain(CF) - peak_gain(f). Both are exactly 0 at f = CF.
    """
    center = refine_peak(pattern_set.center_pattern)
    out = []
    for p in pattern_set.patterns:
        if p.frequency_hz == pattern_set.band.center_hz:
            out.append((0.0, 0.0))
            continue
        est = refine_peak(p)
        out.append((center.azimuth_deg - est.azimuth_deg, center.gain_dbi - est.gain_dbi))
    return out


def _sinc(x: float, kind: str) -> float:
    if kind == SINC_NORMALIZED:
        return float(np.sinc(x))
    if x == 0.0:
        return 1.0
    return float(np.sin(x) / x)


def dpbq(
    gain_cf_dbi: float,
    pd_db: float,
    ad_deg: float,
    hpbw_deg: float,
    convention: DpbqConvention = DEFAULT_CONVENTION,
) -> float:
    """Retained-power percentage combining PD with the AD/HPBW sinc penalty.

    Evaluates (Gain(CF) - PD) * |sinc(0.6238 AD / HPBW)| / Gain(CF) * 100 in
    the convention's gain domain. The decibel domain plugs dB values in
    directly (the measured-table arithmetic) and is singular at 0 dBi.
    """
    if not hpbw_deg > 0:
        raise ValidationError(f"hpbw_deg must be > 0, got {hpbw_deg}")
    if convention.gain_domain == DOMAIN_DECIBEL:
        if gain_cf_dbi == 0.0:
            raise SingularityError(
                "DPBQ in the decibel domain is singular at Gain(CF) = 0 dBi"
            )
        ratio = (gain_cf_dbi - pd_db) / gain_cf_dbi
    else:
        gain_cf_lin = 10.0 ** (gain_cf_dbi / 10.0)
        gain_f_lin = 10.0 ** ((gain_cf_dbi - pd_db) / 10.0)
        ratio = gain_f_lin / gain_cf_lin
    sinc_factor = abs(_sinc(DPBQ_SINC_SCALE * ad_deg / hpbw_deg, convention.sinc_kind))
    return ratio * sinc_factor * 100.0


def kpi_table(
    pattern_set: PatternSet,
    convention: DpbqConvention = DEFAULT_CONVENTION,
) -> list[KpiRow]:
    """One KPI row per frequency; the center-frequency row is the identity row."""
    center = refine_peak(pattern_set.center_pattern)
    deltas = squint_deltas(pattern_set)
    rows = []
    for p, (ad, pd) in zip(pattern_set.patterns, deltas):
        est = refine_peak(p)
        hpbw = half_power_beamwidth(p)
        rows.append(
            KpiRow(
                frequency_hz=p.frequency_hz,
                peak_azimuth_deg=est.azimuth_deg,
                peak_gain_dbi=est.gain_dbi,
                hpbw_deg=hpbw,
                ad_deg=ad,
                pd_db=pd,
                dpbq_percent=dpbq(center.gain_dbi, pd, ad, hpbw, convention),
            )
        )
    return rows
