"""Lens design-space exploration: sweeps, scan-range search, Pareto filtering.

Quantifies the two headline trade-offs of dielectric-lens design: higher
permittivity buys nothing here but loss (Fresnel reflection grows with n),
and a lower f/D ratio stretches the usable feed-offset scan range.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import BeamwidthUndefinedError, BoundaryPeakError, ValidationError
from .lens import (
    DEFAULT_APERTURE_SAMPLES,
    MATERIALS,
    LensDesign,
    Material,
    aperture_field,
    synthesize_lens_pattern,
)
from .metrics import DEFAULT_CONVENTION, DpbqConvention, kpi_table, refine_peak
from .patterns import DEFAULT_GRID, AzimuthGrid, FrequencyBand

SWEEP_DEFAULT_LOSS_TANGENT = 3e-4
"""Loss tangent assumed for sweep permittivities with no catalog match."""


@dataclass(frozen=True)
class SweepSpec:
    """Grid of lens designs to evaluate over a band."""

    permittivity_values: tuple[float, ...]
    f_over_d_values: tuple[float, ...]
    diameter_values: tuple[float, ...]
    band: FrequencyBand
    scan_loss_limit_db: float = 3.0

    def __post_init__(self):
        for name in ("permittivity_values", "f_over_d_values", "diameter_values"):
            values = tuple(getattr(self, name))
            object.__setattr__(self, name, values)
            if not values:
                raise ValidationError(f"{name} must not be empty")
        if any(er <= 1.0 for er in self.permittivity_values):
            raise ValidationError("permittivity values must be > 1")
        if any(v <= 0 for v in self.f_over_d_values + self.diameter_values):
            raise ValidationError("f/D and diameter values must be > 0")
        if not self.scan_loss_limit_db > 0:
            raise ValidationError(
                f"scan_loss_limit_db must be > 0, got {self.scan_loss_limit_db}"
            )


@dataclass(frozen=True)
class DesignReport:
    """Evaluated figures of merit for one lens design."""

    design: LensDesign
    peak_gain_dbi: float
    total_loss_db: float
    max_scan_deg: float
    band_edge_dpbq_percent: float

    def __post_init__(self):
        for name in ("peak_gain_dbi", "total_loss_db", "max_scan_deg", "band_edge_dpbq_percent"):
            if not np.isfinite(getattr(self, name)):
                raise ValidationError(f"{name} must be finite")
        if self.total_loss_db > 1e-12:
            raise ValidationError(f"total_loss_db must be <= 0, got {self.total_loss_db}")
        if self.max_scan_deg < 0:
            raise ValidationError(f"max_scan_deg must be >= 0, got {self.max_scan_deg}")


def material_for_permittivity(relative_permittivity: float) -> Material:
    """Catalog material with matching permittivity, or a custom one.

    Custom materials carry the sweep default loss tangent so permittivity
    comparisons stay apples-to-apples.
    """
    for mat in MATERIALS.values():
        if abs(mat.relative_permittivity - relative_permittivity) < 1e-9:
            return mat
    return Material(
        relative_permittivity,
        SWEEP_DEFAULT_LOSS_TANGENT,
        f"custom-er{relative_permittivity:g}",
    )


def _scan_state(design: LensDesign, offset_m: float, band: FrequencyBand,
                grid: AzimuthGrid, reference_gain_dbi: float):
    """Scan loss and beam angle at one offset; None marks an unusable beam."""
    steered = dataclasses.replace(design, feed_offset_m=offset_m)
    single = FrequencyBand(band.center_hz, band.center_hz, band.center_hz, 1)
    try:
        est = refine_peak(synthesize_lens_pattern(steered, single, grid).patterns[0])
    except (BeamwidthUndefinedError, BoundaryPeakError):
        return None
    return reference_gain_dbi - est.gain_dbi, est.azimuth_deg


def max_scan_angle(
    design: LensDesign,
    band: FrequencyBand,
    limit_db: float,
    grid: AzimuthGrid = DEFAULT_GRID,
    iterations: int = 22,
) -> float:
    """Largest beam angle whose scan loss stays within the limit.

    Bisects the feed offset between zero and the design's offset bound;
    beams that fall apart (no -3 dB crossings, or peak off the grid) count
    as beyond the limit.
    """
    on_axis = dataclasses.replace(design, feed_offset_m=0.0)
    single = FrequencyBand(band.center_hz, band.center_hz, band.center_hz, 1)
    reference = refine_peak(synthesize_lens_pattern(on_axis, single, grid).patterns[0])

    bound = 0.95 * design.focal_length_m
    state = _scan_state(design, bound, band, grid, reference.gain_dbi)
    if state is not None and state[0] <= limit_db:
        return abs(state[1])
    lo, angle_lo = 0.0, 0.0
    hi = bound
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        state = _scan_state(design, mid, band, grid, reference.gain_dbi)
        if state is not None and state[0] <= limit_db:
            lo, angle_lo = mid, abs(state[1])
        else:
            hi = mid
    return angle_lo


def evaluate_design(
    design: LensDesign,
    band: FrequencyBand,
    limit_db: float = 3.0,
    grid: AzimuthGrid = DEFAULT_GRID,
    convention: DpbqConvention = DEFAULT_CONVENTION,
) -> DesignReport:
    """Synthesize, extract KPIs, and search the scan range for one design."""
    rows = kpi_table(synthesize_lens_pattern(design, band, grid), convention)
    center_row = next(r for r in rows if r.frequency_hz == band.center_hz)
    edge_dpbq = min(rows[0].dpbq_percent, rows[-1].dpbq_percent)
    ap = aperture_field(design, band.center_hz)
    total_loss = ap.transmission_db + 10.0 * np.log10(ap.spillover_efficiency)
    return DesignReport(
        design=design,
        peak_gain_dbi=center_row.peak_gain_dbi,
        total_loss_db=float(total_loss),
        max_scan_deg=max_scan_angle(design, band, limit_db, grid),
        band_edge_dpbq_percent=edge_dpbq,
    )


def run_sweep(
    spec: SweepSpec,
    grid: AzimuthGrid = DEFAULT_GRID,
    aperture_samples: int | None = None,
) -> list[DesignReport]:
    """Evaluate the full permittivity x f/D x diameter grid, in input order."""
    reports = []
    for er, f_over_d, diameter in product(
        spec.permittivity_values, spec.f_over_d_values, spec.diameter_values
    ):
        design = LensDesign(
            material=material_for_permittivity(er),
            diameter_m=diameter,
            f_over_d=f_over_d,
            aperture_samples=(
                aperture_samples if aperture_samples is not None else DEFAULT_APERTURE_SAMPLES
            ),
        )
        reports.append(
            evaluate_design(design, spec.band, spec.scan_loss_limit_db, grid)
        )
    return reports


def pareto_front(reports: list[DesignReport]) -> list[DesignReport]:
    """Non-dominated designs under (maximize gain, maximize scan range).

    A report is dominated if another is at least as good in both objectives
    and strictly better in one. Output is sorted by gain descending; ties
    keep their input order.
    """
    if not reports:
        raise ValidationError("reports must not be empty")
    front = []
    for i, candidate in enumerate(reports):
        dominated = False
        for j, other in enumerate(reports):
            if i == j:
                continue
            ge_gain = other.peak_gain_dbi >= candidate.peak_gain_dbi
            ge_scan = other.max_scan_deg >= candidate.max_scan_deg
            strict = (
                other.peak_gain_dbi > candidate.peak_gain_dbi
                or other.max_scan_deg > candidate.max_scan_deg
            )
            if ge_gain and ge_scan and strict:
                dominated = True
                break
        if not dominated:
            front.append(candidate)
    return sorted(front, key=lambda r: -r.peak_gain_dbi)
