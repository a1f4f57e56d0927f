import math

import numpy as np
import pytest

from squintkit import (
    AzimuthGrid,
    BeamPattern,
    BeamwidthUndefinedError,
    BoundaryPeakError,
    DpbqConvention,
    FrequencyBand,
    PatternSet,
    SingularityError,
    ValidationError,
    Weighting,
    dpbq,
    half_power_beamwidth,
    kpi_table,
    refine_peak,
    sample_grid,
    squint_deltas,
    synthesize_array_pattern,
)

from conftest import make_array


def pattern_from(grid, gains, freq=28.5e9):
    return BeamPattern(frequency_hz=freq, grid=grid, gain_dbi=np.asarray(gains, float))


def parabola_pattern(grid, peak_az, peak_db, curvature=3.0 / 49.0, freq=28.5e9):
    angles = sample_grid(grid)
    return pattern_from(grid, peak_db - curvature * (angles - peak_az) ** 2, freq)


class TestRefinePeak:
    def test_symmetric_neighbors_pin_vertex(self):
        grid = AzimuthGrid(8.0, 11.0, 0.5)
        gains = [-9.0, -8.0, -7.0, -6.8, -7.0, -8.0, -9.0]
        est = refine_peak(pattern_from(grid, gains))
        assert est.azimuth_deg == pytest.approx(9.5)
        assert est.gain_dbi == pytest.approx(-6.8)
        assert not est.degenerate

    def test_three_point_vertex_formula(self):
        grid = AzimuthGrid(8.0, 11.0, 0.5)
        gains = [-9.0, -8.0, -7.0, -6.8, -6.9, -8.0, -9.0]
        est = refine_peak(pattern_from(grid, gains))
        # 9.5 + 0.5 * (-7.0 + 6.9) / (2 * (-7.0 - 6.9 + 2*6.8))
        assert est.azimuth_deg == pytest.approx(9.583333333)

    def test_constant_pattern_rejected_at_construction(self):
        with pytest.raises(ValidationError):
            pattern_from(AzimuthGrid(0, 2, 1), [1.0, 1.0, 1.0])

    def test_boundary_peak_raises(self):
        grid = AzimuthGrid(0, 3, 1)
        with pytest.raises(BoundaryPeakError):
            refine_peak(pattern_from(grid, [0.0, -1.0, -2.0, -3.0]))
        with pytest.raises(BoundaryPeakError):
            refine_peak(pattern_from(grid, [-3.0, -2.0, -1.0, 0.0]))

    def test_plateau_returns_center_with_flag(self):
        grid = AzimuthGrid(0, 6, 1)
        est = refine_peak(pattern_from(grid, [-5, -1, 0, 0, 0, -1, -5]))
        assert est.azimuth_deg == pytest.approx(3.0)
        assert est.gain_dbi == pytest.approx(0.0)
        assert est.degenerate

    def test_parabola_vertex_recovered_exactly(self):
        grid = AzimuthGrid(-20, 20, 0.125)
        pattern = parabola_pattern(grid, peak_az=3.177, peak_db=-2.5)
        est = refine_peak(pattern)
        assert est.azimuth_deg == pytest.approx(3.177, abs=1e-9)
        assert est.gain_dbi == pytest.approx(-2.5, abs=1e-9)

    def test_agrees_with_fine_grid_argmax(self):
        # independent oracle: brute-force argmax on a 10x finer synthesis
        rng = np.random.default_rng(42)
        coarse = AzimuthGrid(-60, 60, 0.01)
        fine = AzimuthGrid(-60, 60, 0.001)
        for _ in range(5):
            steer = float(rng.uniform(-40, 40))
            n = int(rng.choice([8, 16, 32]))
            design = make_array(n, steer)
            band = FrequencyBand(28.5e9, 28.5e9, 28.5e9, 1)
            refined = refine_peak(
                synthesize_array_pattern(design, band, coarse).patterns[0]
            )
            fine_pattern = synthesize_array_pattern(design, band, fine).patterns[0]
            brute = fine_pattern.angles_deg()[int(np.argmax(fine_pattern.gain_dbi))]
            assert abs(refined.azimuth_deg - brute) < 0.005


class TestHalfPowerBeamwidth:
    def test_triangular_pattern(self):
        grid = AzimuthGrid(-10, 10, 0.5)
        angles = sample_grid(grid)
        pattern = pattern_from(grid, -np.abs(angles))
        assert half_power_beamwidth(pattern) == pytest.approx(6.0)

    def test_ula_matches_standard_approximation(self):
        design = make_array(16, 0.0)
        band = FrequencyBand(28.5e9, 28.5e9, 28.5e9, 1)
        grid = AzimuthGrid(-60, 60, 0.01)
        hpbw = half_power_beamwidth(
            synthesize_array_pattern(design, band, grid).patterns[0]
        )
        approx = math.degrees(0.886 * 2.0 / 16.0)
        assert hpbw == pytest.approx(approx, rel=0.05)

    def test_clipped_pattern_raises(self):
        grid = AzimuthGrid(-1, 1, 0.5)
        with pytest.raises(BeamwidthUndefinedError):
            half_power_beamwidth(pattern_from(grid, [-2.0, -1.0, 0.0, -1.0, -2.0]))


def table1_like_set(grid=None):
    grid = grid or AzimuthGrid(-30, 30, 0.05)
    band = FrequencyBand(28.5e9, 27.5e9, 29.5e9, 3)
    rows = [(27.5e9, 9.52, -6.9), (28.5e9, 9.26, -7.5), (29.5e9, 9.34, -6.9)]
    patterns = tuple(parabola_pattern(grid, az, db, freq=f) for f, az, db in rows)
    return PatternSet(patterns=patterns, band=band)


class TestSquintDeltas:
    def test_measured_table_values(self):
        deltas = squint_deltas(table1_like_set())
        assert deltas[0][0] == pytest.approx(-0.26, abs=1e-6)
        assert deltas[0][1] == pytest.approx(-0.6, abs=1e-6)
        assert deltas[2][0] == pytest.approx(-0.08, abs=1e-6)
        assert deltas[2][1] == pytest.approx(-0.6, abs=1e-6)

    def test_center_row_exact_zero(self):
        deltas = squint_deltas(table1_like_set())
        assert deltas[1] == (0.0, 0.0)


class TestDpbq:
    def test_measured_table_row(self):
        assert dpbq(-7.5, -0.6, -0.26, 14.0) == pytest.approx(91.98, abs=0.03)

    def test_identity_at_zero_ad_pd(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            gain = float(rng.uniform(-40, 40))
            if gain == 0.0:
                continue
            hpbw = float(rng.uniform(0.1, 90))
            assert dpbq(gain, 0.0, 0.0, hpbw) == 100.0

    def test_hand_evaluated_example(self):
        value = dpbq(20.0, 1.0, 1.0, 10.0)
        assert value == pytest.approx(94.39, abs=0.01)
        # independent re-evaluation
        expected = (19.0 / 20.0) * abs(np.sinc(0.6238 / 10.0)) * 100.0
        assert value == pytest.approx(expected, rel=1e-12)

    def test_unnormalized_sinc_convention(self):
        convention = DpbqConvention(sinc_kind="unnormalized")
        x = 0.6238 * 1.0 / 10.0
        expected = (19.0 / 20.0) * abs(math.sin(x) / x) * 100.0
        assert dpbq(20.0, 1.0, 1.0, 10.0, convention) == pytest.approx(expected, rel=1e-12)

    def test_linear_domain_convention(self):
        convention = DpbqConvention(gain_domain="linear")
        expected = 10.0 ** (0.6 / 10.0) * abs(np.sinc(0.6238 * -0.26 / 14.0)) * 100.0
        assert dpbq(-7.5, -0.6, -0.26, 14.0, convention) == pytest.approx(expected, rel=1e-12)

    def test_singular_at_zero_gain_in_db_domain(self):
        with pytest.raises(SingularityError):
            dpbq(0.0, -0.5, 0.1, 10.0)
        # linear domain has no singularity at 0 dBi
        assert dpbq(0.0, 0.0, 0.0, 10.0, DpbqConvention(gain_domain="linear")) == 100.0

    def test_monotone_in_hpbw(self):
        values = [dpbq(-7.5, -0.6, -0.26, h) for h in np.linspace(0.5, 90, 200)]
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_invalid_hpbw(self):
        with pytest.raises(ValidationError):
            dpbq(10.0, 0.0, 0.0, 0.0)

    def test_unknown_convention_rejected(self):
        with pytest.raises(ValidationError):
            DpbqConvention(sinc_kind="cosine")
        with pytest.raises(ValidationError):
            DpbqConvention(gain_domain="nepers")


class TestKpiTable:
    def test_center_row_is_identity(self):
        rows = kpi_table(table1_like_set())
        center = rows[1]
        assert center.ad_deg == 0.0
        assert center.pd_db == 0.0
        assert center.dpbq_percent == 100.0

    def test_single_frequency_set(self):
        grid = AzimuthGrid(-30, 30, 0.05)
        band = FrequencyBand(28.5e9, 28.5e9, 28.5e9, 1)
        ps = PatternSet(
            patterns=(parabola_pattern(grid, 0.0, 10.0),), band=band
        )
        rows = kpi_table(ps)
        assert len(rows) == 1
        assert rows[0].ad_deg == 0.0
        assert rows[0].dpbq_percent == 100.0

    def test_ttd_set_has_zero_ad_column(self, coarse_grid, band):
        design = make_array(16, 30.0, Weighting.TRUE_TIME_DELAY)
        rows = kpi_table(synthesize_array_pattern(design, band, coarse_grid))
        assert all(abs(r.ad_deg) < 0.005 for r in rows)

    def test_constant_db_shift_invariance(self):
        base = table1_like_set()
        shifted = PatternSet(
            patterns=tuple(
                BeamPattern(p.frequency_hz, p.grid, p.gain_dbi + 12.5)
                for p in base.patterns
            ),
            band=base.band,
        )
        rows_a = kpi_table(base)
        rows_b = kpi_table(shifted)
        for a, b in zip(rows_a, rows_b):
            assert b.ad_deg == pytest.approx(a.ad_deg, abs=1e-9)
            assert b.pd_db == pytest.approx(a.pd_db, abs=1e-9)
            assert b.hpbw_deg == pytest.approx(a.hpbw_deg, abs=1e-9)
        # DPBQ in the decibel domain is deliberately NOT shift invariant
        assert rows_b[0].dpbq_percent != pytest.approx(rows_a[0].dpbq_percent, abs=1e-3)
