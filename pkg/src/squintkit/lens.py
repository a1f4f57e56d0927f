"""Geometric-optics model of a plano-convex hyperbolic dielectric lens.

The curved (hyperbolic) face looks at the feed and equalizes all path
lengths from the focus to the flat exit face, so an on-axis feed produces
a uniform-phase aperture at every frequency. Displacing the feed
transversely tilts the aperture phase and scans the beam.

The aperture is modeled as a 1-D transverse cut: sampled positions,
amplitudes (feed taper times spherical spreading), and path delays, plus
bulk Fresnel/dielectric losses and a spillover efficiency. Far fields come
from a discrete aperture sum and are calibrated to a two-cut directivity
estimate (41253 / HPBW_az / HPBW_el with the elevation cut assumed equal
to azimuth).
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ResolutionError, ValidationError
from .metrics import half_power_beamwidth, refine_peak
from .patterns import (
    DEFAULT_GRID,
    SPEED_OF_LIGHT,
    AzimuthGrid,
    BeamPattern,
    FrequencyBand,
    PatternSet,
    sample_grid,
)

KRAUS_CONSTANT = 41253.0
"""Square degrees of a sphere, for the two-cut directivity estimate."""

DEFAULT_EDGE_TAPER_DB = -24.0
"""Default aperture edge illumination (feed taper plus spreading), in dB."""

DEFAULT_APERTURE_SAMPLES = 512


@dataclass(frozen=True)
class Material:
    """Dielectric lens material."""

    relative_permittivity: float
    loss_tangent: float
    name: str = ""

    def __post_init__(self):
        if not self.relative_permittivity > 1.0:
            raise ValidationError(
                f"relative_permittivity must be > 1, got {self.relative_permittivity}"
            )
        if not self.loss_tangent >= 0.0:
            raise ValidationError(f"loss_tangent must be >= 0, got {self.loss_tangent}")

    @property
    def refractive_index(self) -> float:
        return float(np.sqrt(self.relative_permittivity))


MATERIALS: dict[str, Material] = {
    "polyethylene": Material(2.25, 3e-4, "polyethylene"),
    "ptfe": Material(2.1, 2e-4, "ptfe"),
    "rexolite": Material(2.53, 6.6e-4, "rexolite"),
    "fused_quartz": Material(3.78, 1e-4, "fused_quartz"),
    "alumina": Material(9.8, 1e-4, "alumina"),
}
"""Built-in catalog; values are standard vendor numbers at Ka band."""


@dataclass(frozen=True)
class LensDesign:
    """Lens geometry, material, and feed placement.

    ``feed_exponent`` is the q of the feed's cos^q amplitude pattern; pass
    None to solve for the exponent that puts the aperture edge illumination
    at DEFAULT_EDGE_TAPER_DB.
    """

    material: Material
    diameter_m: float
    f_over_d: float
    feed_offset_m: float = 0.0
    aperture_samples: int = DEFAULT_APERTURE_SAMPLES
    feed_exponent: float | None = None

    def __post_init__(self):
        if not self.diameter_m > 0:
            raise ValidationError(f"diameter_m must be > 0, got {self.diameter_m}")
        if not self.f_over_d > 0:
            raise ValidationError(f"f_over_d must be > 0, got {self.f_over_d}")
        if int(self.aperture_samples) != self.aperture_samples or self.aperture_samples < 16:
            raise ValidationError(
                f"aperture_samples must be an integer >= 16, got {self.aperture_samples}"
            )
        if not abs(self.feed_offset_m) < self.focal_length_m:
            raise ValidationError(
                f"|feed_offset_m| ({abs(self.feed_offset_m)}) must be < focal length "
                f"({self.focal_length_m})"
            )
        if self.feed_exponent is None:
            object.__setattr__(
                self, "feed_exponent", feed_exponent_for_edge_taper(self, DEFAULT_EDGE_TAPER_DB)
            )
        elif not self.feed_exponent >= 0:
            raise ValidationError(f"feed_exponent must be >= 0, got {self.feed_exponent}")

    @property
    def focal_length_m(self) -> float:
        return self.f_over_d * self.diameter_m


@dataclass(frozen=True)
class ApertureField:
    """Sampled transverse aperture cut plus bulk loss and spillover terms."""

    positions_m: np.ndarray = field(repr=False)
    amplitude: np.ndarray = field(repr=False)
    delay_s: np.ndarray = field(repr=False)
    spillover_efficiency: float
    transmission_db: float

    def __post_init__(self):
        pos = np.array(self.positions_m, dtype=float)
        amp = np.array(self.amplitude, dtype=float)
        dly = np.array(self.delay_s, dtype=float)
        if not (pos.size == amp.size == dly.size):
            raise ValidationError("positions, amplitude, delay must have equal lengths")
        for name, arr in (("positions_m", pos), ("amplitude", amp), ("delay_s", dly)):
            if not np.all(np.isfinite(arr)):
                raise ValidationError(f"{name} contains non-finite values")
        if np.any(amp < 0):
            raise ValidationError("amplitude values must be nonnegative")
        if not 0.0 < self.spillover_efficiency <= 1.0:
            raise ValidationError(
                f"spillover_efficiency must be in (0, 1], got {self.spillover_efficiency}"
            )
        if self.transmission_db > 0.0:
            raise ValidationError(
                f"transmission_db must be <= 0, got {self.transmission_db}"
            )
        for name, arr in (("positions_m", pos), ("amplitude", amp), ("delay_s", dly)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)


def lens_profile(design: LensDesign, psi_rad: float) -> float:
    """Distance from the focus to the curved surface along a ray at angle psi.

    r(psi) = (n - 1) f_L / (n cos(psi) - 1), the path-length-equalizing
    hyperbola; defined for 0 <= psi < acos(1/n).
    """
    n = design.material.refractive_index
    asymptote = float(np.arccos(1.0 / n))
    if not 0.0 <= psi_rad < asymptote:
        raise DomainError(
            f"psi = {psi_rad} rad outside [0, {asymptote}) (hyperbola asymptote)"
        )
    return (n - 1.0) * design.focal_length_m / (n * np.cos(psi_rad) - 1.0)


def _psi_from_radius(design: LensDesign, x: np.ndarray) -> np.ndarray:
    """Feed-ray angle whose surface point sits at transverse distance |x|.

    Solves r(psi) sin(psi) = |x| in closed form: the equation rearranges to
    A sin(psi) + B cos(psi) = C with A = (n-1) f_L, B = -n|x|, C = -|x|,
    whose small root is asin(C / hypot(A, B)) - atan2(B, A).
    """
    n = design.material.refractive_index
    ax = np.abs(np.asarray(x, dtype=float))
    a = (n - 1.0) * design.focal_length_m
    b = -n * ax
    c = -ax
    psi = np.arcsin(c / np.hypot(a, b)) - np.arctan2(b, a)
    return np.sign(x) * psi


def rim_angle(design: LensDesign) -> float:
    """Feed-ray angle of the lens rim (transverse radius D/2)."""
    return float(_psi_from_radius(design, np.asarray(design.diameter_m / 2.0)))


def feed_exponent_for_edge_taper(design: LensDesign, taper_db: float) -> float:
    """Feed cos^q exponent that yields the requested edge illumination.

    The edge taper counts both the feed pattern and the 1/r spherical
    spreading between the focus and the rim.
    """
    if not taper_db < 0:
        raise ValidationError(f"taper_db must be negative, got {taper_db}")
    # Bypass feed_exponent resolution: geometry only depends on D, f/D, n.
    psi_max = rim_angle(
        dataclasses.replace(design, feed_exponent=0.0, feed_offset_m=0.0)
    )
    r_edge = lens_profile(dataclasses.replace(design, feed_exponent=0.0), psi_max)
    spread_db = 20.0 * np.log10(design.focal_length_m / r_edge)
    return float((taper_db - spread_db) / (20.0 * np.log10(np.cos(psi_max))))


def _signed_power_fraction(psi: np.ndarray, exponent: float) -> np.ndarray:
    """Cumulative feed power fraction from boresight out to a signed angle."""
    m = 2.0 * exponent + 1.0
    return np.sign(psi) * (1.0 - np.cos(np.abs(psi)) ** m)


def aperture_field(design: LensDesign, frequency_hz: float) -> ApertureField:
    """Sample the aperture cut for one frequency.

    Amplitude is the feed's cos^q pattern over 1/r spreading, evaluated from
    the (possibly displaced) feed position; delay is the feed-to-surface
    path plus the dielectric path to the flat face at speed c/n. With the
    feed on axis the delays are constant by construction.
    """
    if not frequency_hz > 0:
        raise ValidationError(f"frequency_hz must be > 0, got {frequency_hz}")
    n = design.material.refractive_index
    half = design.diameter_m / 2.0
    x = np.linspace(-half, half, design.aperture_samples)
    psi = _psi_from_radius(design, x)
    r = (n - 1.0) * design.focal_length_m / (n * np.cos(psi) - 1.0)
    z = r * np.cos(psi)
    psi_max = rim_angle(design)
    z_rim = lens_profile(design, psi_max) * np.cos(psi_max)

    # Feed sits at transverse position -feed_offset_m so that a positive
    # offset steers the beam toward positive azimuth.
    delta = design.feed_offset_m
    dist = np.sqrt(r * r + 2.0 * x * delta + delta * delta)
    cos_feed = np.clip(z / dist, 0.0, None)
    amplitude = cos_feed**design.feed_exponent / dist
    delay = (dist + n * (z_rim - z)) / SPEED_OF_LIGHT

    rim_hi = np.arctan2(half + delta, z_rim)
    rim_lo = np.arctan2(-half + delta, z_rim)
    spill = 0.5 * float(
        _signed_power_fraction(np.asarray(rim_hi), design.feed_exponent)
        - _signed_power_fraction(np.asarray(rim_lo), design.feed_exponent)
    )

    gamma = (n - 1.0) / (n + 1.0)
    fresnel_db = 20.0 * np.log10(1.0 - gamma * gamma)
    mean_thickness = float(np.mean(z_rim - z))
    alpha_np = np.pi * frequency_hz * n * design.material.loss_tangent / SPEED_OF_LIGHT
    dielectric_db = -alpha_np * mean_thickness * (20.0 / np.log(10.0))

    return ApertureField(
        positions_m=x,
        amplitude=amplitude,
        delay_s=delay,
        spillover_efficiency=spill,
        transmission_db=float(fresnel_db + dielectric_db),
    )


def far_field_db(
    aperture: ApertureField, frequency_hz: float, grid: AzimuthGrid
) -> np.ndarray:
    """Uncalibrated far-field cut in dB from the discrete aperture sum."""
    angles = sample_grid(grid)
    phase = (
        2j
        * np.pi
        * frequency_hz
        * (
            aperture.delay_s[None, :]
            - np.outer(np.sin(np.radians(angles)), aperture.positions_m) / SPEED_OF_LIGHT
        )
    )
    total = (aperture.amplitude[None, :] * np.exp(phase)).sum(axis=1)
    return 20.0 * np.log10(np.maximum(np.abs(total), 1e-30))


def synthesize_lens_pattern(
    design: LensDesign, band: FrequencyBand, grid: AzimuthGrid
) -> PatternSet:
    """Per-frequency calibrated gain patterns for the lens over the band.

    Each frequency's peak is set to the two-cut directivity estimate from
    its own HPBW, plus the bulk transmission loss and spillover efficiency.
    """
    freqs = band.frequencies()
    wavelengths_across = design.diameter_m * freqs.max() / SPEED_OF_LIGHT
    if design.aperture_samples < 4.0 * wavelengths_across:
        raise ResolutionError(
            f"aperture_samples = {design.aperture_samples} gives fewer than 4 samples "
            f"per wavelength across the {wavelengths_across:.1f}-wavelength aperture"
        )
    patterns = []
    for f in freqs:
        ap = aperture_field(design, float(f))
        raw = far_field_db(ap, float(f), grid)
        raw_pattern = BeamPattern(frequency_hz=float(f), grid=grid, gain_dbi=raw)
        hpbw = half_power_beamwidth(raw_pattern)
        target_peak = (
            10.0 * np.log10(KRAUS_CONSTANT / (hpbw * hpbw))
            + ap.transmission_db
            + 10.0 * np.log10(ap.spillover_efficiency)
        )
        offset = target_peak - refine_peak(raw_pattern).gain_dbi
        patterns.append(BeamPattern(frequency_hz=float(f), grid=grid, gain_dbi=raw + offset))
    return PatternSet(patterns=tuple(patterns), band=band)


def scan_curve(
    design: LensDesign,
    offsets_m: list[float],
    frequency_hz: float,
    grid: AzimuthGrid = DEFAULT_GRID,
) -> list[tuple[float, float]]:
    """Beam angle and scan loss for each feed offset at one frequency.

    Scan loss is the calibrated peak-gain drop relative to the on-axis feed.
    """
    band = FrequencyBand(frequency_hz, frequency_hz, frequency_hz, 1)
    on_axis = dataclasses.replace(design, feed_offset_m=0.0)
    reference = refine_peak(
        synthesize_lens_pattern(on_axis, band, grid).patterns[0]
    )
    out = []
    for offset in offsets_m:
        steered = dataclasses.replace(design, feed_offset_m=offset)
        est = refine_peak(synthesize_lens_pattern(steered, band, grid).patterns[0])
        out.append((est.azimuth_deg, reference.gain_dbi - est.gain_dbi))
    return out
