"""Core domain types: frequency bands, azimuth grids, and sampled beam patterns.

Angles are stored and reported in degrees; gains in dBi. All types are
immutable after construction and all functions are pure, so everything
here is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import RangeError, ValidationError

SPEED_OF_LIGHT = 299_792_458.0
"""Speed of light in m/s (exact)."""


def _frozen_array(values) -> np.ndarray:
    arr = np.array(values, dtype=float)  # copy, so callers' arrays stay writable
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class FrequencyBand:
    """An operating band: center frequency plus lower/upper edges.

    ``sample_count`` is the number of evaluation frequencies the synthesis
    engines place uniformly across [lower_hz, upper_hz]; the center
    frequency must be one of them.
    """

    center_hz: float
    lower_hz: float
    upper_hz: float
    sample_count: int = 3

    def __post_init__(self):
        for name in ("center_hz", "lower_hz", "upper_hz"):
            v = getattr(self, name)
            if not np.isfinite(v) or v <= 0:
                raise ValidationError(f"{name} must be a positive finite frequency, got {v}")
        if not self.lower_hz <= self.center_hz <= self.upper_hz:
            raise ValidationError(
                f"band ordering violated: lower_hz ({self.lower_hz}) <= center_hz "
                f"({self.center_hz}) <= upper_hz ({self.upper_hz}) required"
            )
        if int(self.sample_count) != self.sample_count or self.sample_count < 1:
            raise ValidationError(f"sample_count must be an integer >= 1, got {self.sample_count}")

    def frequencies(self) -> np.ndarray:
        """Uniform evaluation frequencies, with the center snapped exactly.

        Raises ValidationError if the center frequency is not (within 1e-9
        relative) one of the uniform samples, since every synthesized
        PatternSet must contain the center-frequency pattern.
        """
        if self.sample_count == 1:
            if self.lower_hz != self.center_hz or self.upper_hz != self.center_hz:
                raise ValidationError(
                    "sample_count=1 requires lower_hz == center_hz == upper_hz"
                )
            return _frozen_array([self.center_hz])
        freqs = np.linspace(self.lower_hz, self.upper_hz, self.sample_count)
        i = int(np.argmin(np.abs(freqs - self.center_hz)))
        if abs(freqs[i] - self.center_hz) > 1e-9 * self.center_hz:
            raise ValidationError(
                "center_hz is not one of the band's uniform samples; adjust "
                "sample_count or the band edges"
            )
        freqs[i] = self.center_hz
        return _frozen_array(freqs)


@dataclass(frozen=True)
class AzimuthGrid:
    """A uniform azimuth sampling: start, stop (inclusive) and step, in degrees."""

    start_deg: float
    stop_deg: float
    step_deg: float

    def __post_init__(self):
        if not (np.isfinite(self.start_deg) and np.isfinite(self.stop_deg)):
            raise ValidationError("grid endpoints must be finite")
        if self.start_deg >= self.stop_deg:
            raise ValidationError(
                f"start_deg ({self.start_deg}) must be < stop_deg ({self.stop_deg})"
            )
        if not self.step_deg > 0:
            raise ValidationError(f"step_deg must be > 0, got {self.step_deg}")
        ratio = (self.stop_deg - self.start_deg) / self.step_deg
        if abs(ratio - round(ratio)) > 1e-9:
            raise ValidationError(
                f"(stop_deg - start_deg) / step_deg = {ratio} is not an integer; "
                "the grid must land exactly on stop_deg"
            )

    @property
    def point_count(self) -> int:
        return int(round((self.stop_deg - self.start_deg) / self.step_deg)) + 1


DEFAULT_GRID = AzimuthGrid(-60.0, 60.0, 0.01)
"""Default analysis grid: fine enough to resolve 0.01 deg KPI reporting."""

DEFAULT_BAND = FrequencyBand(center_hz=28.5e9, lower_hz=27.5e9, upper_hz=29.5e9, sample_count=3)
"""Default operating band: 27.5 to 29.5 GHz around a 28.5 GHz center."""


def sample_grid(grid: AzimuthGrid) -> np.ndarray:
    """Return the grid's sample angles: start, start+step, ..., stop inclusive."""
    return _frozen_array(np.linspace(grid.start_deg, grid.stop_deg, grid.point_count))


@dataclass(frozen=True)
class BeamPattern:
    """One azimuth gain cut at a single frequency.

    ``gain_dbi`` holds one finite value per grid point and must not be
    constant (a constant cut has no extractable peak).
    """

    frequency_hz: float
    grid: AzimuthGrid
    gain_dbi: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not np.isfinite(self.frequency_hz) or self.frequency_hz <= 0:
            raise ValidationError(f"frequency_hz must be positive, got {self.frequency_hz}")
        gains = np.asarray(self.gain_dbi, dtype=float)
        if gains.ndim != 1 or gains.size != self.grid.point_count:
            raise ValidationError(
                f"gain_dbi length {gains.size} does not match grid point count "
                f"{self.grid.point_count}"
            )
        if not np.all(np.isfinite(gains)):
            raise ValidationError("gain_dbi contains non-finite values")
        if gains.max() == gains.min():
            raise ValidationError("pattern is constant; no peak exists")
        object.__setattr__(self, "gain_dbi", _frozen_array(gains))

    def angles_deg(self) -> np.ndarray:
        return sample_grid(self.grid)


def interpolate_gain(pattern: BeamPattern, azimuth_deg: float) -> float:
    """Gain at an arbitrary azimuth, linear in dB between bracketing samples.

    Queries at exact sample angles return the stored value bit-identically.
    """
    angles = pattern.angles_deg()
    if not (angles[0] <= azimuth_deg <= angles[-1]):
        raise RangeError(
            f"azimuth {azimuth_deg} deg outside pattern range "
            f"[{angles[0]}, {angles[-1]}] deg",
            float(angles[0]),
            float(angles[-1]),
        )
    i = int(np.searchsorted(angles, azimuth_deg))
    gains = pattern.gain_dbi
    if i < angles.size and angles[i] == azimuth_deg:
        return float(gains[i])
    lo, hi = i - 1, i
    frac = (azimuth_deg - angles[lo]) / (angles[hi] - angles[lo])
    return float(gains[lo] + frac * (gains[hi] - gains[lo]))


@dataclass(frozen=True)
class PatternSet:
    """Per-frequency beam patterns sharing one grid, with a band descriptor.

    The set must contain exactly band.sample_count patterns with strictly
    increasing frequencies, one of which is exactly the center frequency.
    """

    patterns: tuple[BeamPattern, ...]
    band: FrequencyBand

    def __post_init__(self):
        patterns = tuple(self.patterns)
        object.__setattr__(self, "patterns", patterns)
        if len(patterns) != self.band.sample_count:
            raise ValidationError(
                f"pattern count {len(patterns)} does not match band sample_count "
                f"{self.band.sample_count}"
            )
        freqs = [p.frequency_hz for p in patterns]
        if any(b <= a for a, b in zip(freqs, freqs[1:])):
            raise ValidationError("pattern frequencies must be strictly increasing")
        grid = patterns[0].grid
        if any(p.grid != grid for p in patterns):
            raise ValidationError("all patterns must share the same azimuth grid")
        if self.band.center_hz not in freqs:
            raise ValidationError(
                f"no pattern at the center frequency {self.band.center_hz} Hz"
            )

    @property
    def frequencies(self) -> tuple[float, ...]:
        return tuple(p.frequency_hz for p in self.patterns)

    @property
    def center_pattern(self) -> BeamPattern:
        for p in self.patterns:
            if p.frequency_hz == self.band.center_hz:
                return p
        raise ValidationError("center-frequency pattern missing")  # pragma: no cover

    @property
    def grid(self) -> AzimuthGrid:
        return self.patterns[0].grid
