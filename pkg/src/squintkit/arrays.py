"""Uniform linear array synthesis under phase-shifter and true-time-delay weighting.

Phase-shifter weights are locked to the center frequency, so the beam of a
wideband signal walks with frequency (sin(theta_pk) = f_c/f * sin(theta_0));
true time delay scales the phase with frequency and holds the beam still.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .patterns import (
    SPEED_OF_LIGHT,
    AzimuthGrid,
    BeamPattern,
    FrequencyBand,
    PatternSet,
    sample_grid,
)

DEFAULT_ELEMENT_PEAK_DBI = 5.0
"""Assumed element peak gain used for the default absolute calibration."""

_AMPLITUDE_FLOOR = 1e-30  # keeps log10 finite at exact array-factor nulls


class Weighting(enum.Enum):
    """Element weighting law."""

    PHASE_SHIFTER_AT_CF = "phase_shifter_at_cf"
    TRUE_TIME_DELAY = "true_time_delay"


def half_wavelength(frequency_hz: float) -> float:
    """Half the free-space wavelength, the conventional element spacing."""
    return SPEED_OF_LIGHT / frequency_hz / 2.0


@dataclass(frozen=True)
class ArrayDesign:
    """A uniform linear array and its commanded steering.

    element_exponent is the q of the cos^q element pattern; q = 0 makes the
    elements isotropic, the default q = 1 approximates a low-cost patch.
    """

    element_count: int
    spacing_m: float
    weighting: Weighting
    steer_deg: float = 0.0
    element_exponent: float = 1.0

    def __post_init__(self):
        if int(self.element_count) != self.element_count or self.element_count < 1:
            raise ValidationError(
                f"element_count must be an integer >= 1, got {self.element_count}"
            )
        if not self.spacing_m > 0:
            raise ValidationError(f"spacing_m must be > 0, got {self.spacing_m}")
        if not abs(self.steer_deg) < 90.0:
            raise ValidationError(f"|steer_deg| must be < 90, got {self.steer_deg}")
        if not self.element_exponent >= 0:
            raise ValidationError(
                f"element_exponent must be >= 0, got {self.element_exponent}"
            )


def element_weights(
    design: ArrayDesign, center_hz: float, eval_hz: float
) -> np.ndarray:
    """Unit-magnitude complex weights for each element.

    Phase-shifter weighting applies the center-frequency phase regardless of
    the evaluation frequency; true time delay rephases with eval_hz.
    """
    if center_hz <= 0 or eval_hz <= 0:
        raise ValidationError("frequencies must be > 0")
    phase_freq = center_hz if design.weighting is Weighting.PHASE_SHIFTER_AT_CF else eval_hz
    n = np.arange(design.element_count)
    phases = (
        -2.0
        * np.pi
        * phase_freq
        * n
        * design.spacing_m
        * np.sin(np.radians(design.steer_deg))
        / SPEED_OF_LIGHT
    )
    return np.exp(1j * phases)


def synthesize_array_pattern(
    design: ArrayDesign,
    band: FrequencyBand,
    grid: AzimuthGrid,
    reference_peak_dbi: float | None = None,
) -> PatternSet:
    """Per-frequency gain patterns for the array over the band.

    The whole set is shifted by one constant so the center-frequency peak
    equals ``reference_peak_dbi`` (default: 10 log10 N plus the assumed
    element peak). Relative quantities (AD, PD, HPBW) are unaffected by
    the shift.
    """
    if reference_peak_dbi is None:
        reference_peak_dbi = 10.0 * np.log10(design.element_count) + DEFAULT_ELEMENT_PEAK_DBI
    angles = sample_grid(grid)
    sin_theta = np.sin(np.radians(angles))
    element_db = 20.0 * np.log10(
        np.maximum(
            np.clip(np.cos(np.radians(angles)), 0.0, None) ** design.element_exponent,
            _AMPLITUDE_FLOOR,
        )
    )
    positions = np.arange(design.element_count) * design.spacing_m

    freqs = band.frequencies()
    raw = []
    for f in freqs:
        w = element_weights(design, band.center_hz, f)
        steering = np.exp(2j * np.pi * f * np.outer(sin_theta, positions) / SPEED_OF_LIGHT)
        af = steering @ w
        raw.append(20.0 * np.log10(np.maximum(np.abs(af), _AMPLITUDE_FLOOR)) + element_db)

    center_index = int(np.nonzero(freqs == band.center_hz)[0][0])
    offset = reference_peak_dbi - raw[center_index].max()
    patterns = tuple(
        BeamPattern(frequency_hz=float(f), grid=grid, gain_dbi=g + offset)
        for f, g in zip(freqs, raw)
    )
    return PatternSet(patterns=patterns, band=band)
