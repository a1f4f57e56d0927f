import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest

from squintkit import (
    DEFAULT_MCS_LADDER,
    AzimuthGrid,
    FrequencyBand,
    LinkConfig,
    McsScheme,
    SPEED_OF_LIGHT,
    ValidationError,
    Weighting,
    band_throughput,
    free_space_path_loss,
    refine_peak,
    synthesize_array_pattern,
    throughput,
)

from conftest import make_array

GRID = AzimuthGrid(-60, 60, 0.01)
BAND9 = FrequencyBand(28.5e9, 27.5e9, 29.5e9, 9)
TOP_MCS = DEFAULT_MCS_LADDER[-1]


class TestFreeSpacePathLoss:
    def test_reference_link(self):
        assert free_space_path_loss(5.0, 28.5e9) == pytest.approx(75.52, abs=0.005)

    def test_zero_point(self):
        d = SPEED_OF_LIGHT / (4 * math.pi * 28.5e9)
        assert free_space_path_loss(d, 28.5e9) == pytest.approx(0.0, abs=1e-9)

    def test_doubling_distance_adds_6db(self):
        base = free_space_path_loss(3.0, 10e9)
        assert free_space_path_loss(6.0, 10e9) - base == pytest.approx(
            20 * math.log10(2), abs=1e-9
        )

    def test_against_high_precision_oracle(self):
        rng = np.random.default_rng(99)
        mpmath.mp.dps = 50
        for _ in range(200):
            d = float(rng.uniform(0.1, 1e4))
            f = float(rng.uniform(1e8, 1e11))
            reference = 20 * mpmath.log10(
                4 * mpmath.pi * mpmath.mpf(d) * mpmath.mpf(f) / mpmath.mpf(SPEED_OF_LIGHT)
            )
            assert abs(free_space_path_loss(d, f) - float(reference)) < 1e-9

    def test_invalid_inputs(self):
        with pytest.raises(ValidationError):
            free_space_path_loss(0.0, 1e9)
        with pytest.raises(ValidationError):
            free_space_path_loss(1.0, -1e9)


class TestThroughput:
    def test_overhead_anchor(self):
        config = LinkConfig(overhead_fraction=0.35)
        assert throughput(config, TOP_MCS) == pytest.approx(2.6e9, abs=1e-3)

    def test_zero_overhead_is_exact(self):
        config = LinkConfig(overhead_fraction=0.0)
        assert throughput(config, TOP_MCS) == 4.0e9

    def test_zero_bandwidth_forbidden(self):
        with pytest.raises(ValidationError):
            LinkConfig(bandwidth_hz=0.0)

    def test_mcs_validation(self):
        with pytest.raises(ValidationError):
            McsScheme(5, Fraction(1, 2), 0.0)
        with pytest.raises(ValidationError):
            McsScheme(6, Fraction(7, 6), 0.0)
        scheme = McsScheme(6, 0.5, 0.0)
        assert scheme.code_rate == Fraction(1, 2)


def ttd_set():
    design = make_array(64, 45.0, Weighting.TRUE_TIME_DELAY)
    return synthesize_array_pattern(design, BAND9, GRID)


def squinted_set(steer=45.0):
    design = make_array(64, steer)
    return synthesize_array_pattern(design, BAND9, GRID)


CONFIG = LinkConfig(tx_power_dbm=-14.0, overhead_fraction=0.35)


class TestBandThroughput:
    def test_squint_free_set_reaches_flat_channel_rate(self):
        result = band_throughput(ttd_set(), CONFIG, DEFAULT_MCS_LADDER, 8)
        assert all(s.mcs is TOP_MCS for s in result.subbands)
        assert result.total_bps == pytest.approx(throughput(CONFIG, TOP_MCS), rel=1e-12)
        assert result.total_bps == pytest.approx(2.6e9, abs=0.01e9)

    def test_squinted_array_loses_edge_subbands(self):
        squinted = band_throughput(squinted_set(), CONFIG, DEFAULT_MCS_LADDER, 8)
        flat = band_throughput(ttd_set(), CONFIG, DEFAULT_MCS_LADDER, 8)
        edge_mcs = (squinted.subbands[0].mcs, squinted.subbands[-1].mcs)
        assert all(m is not TOP_MCS for m in edge_mcs)
        assert squinted.total_bps < flat.total_bps

    def test_total_nonincreasing_with_band_edge_squint(self):
        totals = [
            band_throughput(squinted_set(steer), CONFIG, DEFAULT_MCS_LADDER, 8).total_bps
            for steer in (0.0, 20.0, 45.0)
        ]
        assert all(b <= a for a, b in zip(totals, totals[1:]))

    def test_single_subband_equals_carrier_evaluation(self):
        # one subband = single-carrier evaluation: center at CF, noise over
        # the full bandwidth; generous margin keeps the top MCS selected
        config = LinkConfig(tx_power_dbm=10.0, overhead_fraction=0.35)
        result = band_throughput(ttd_set(), config, DEFAULT_MCS_LADDER, 1)
        assert len(result.subbands) == 1
        assert result.subbands[0].center_hz == config.carrier_hz
        assert result.total_bps == pytest.approx(throughput(config, TOP_MCS), rel=1e-12)

    def test_total_bounded_by_top_mcs_ceiling(self):
        for boresight in (None, 40.0, 50.0, 0.0):
            result = band_throughput(
                squinted_set(), CONFIG, DEFAULT_MCS_LADDER, 8, boresight_deg=boresight
            )
            assert result.total_bps <= throughput(CONFIG, TOP_MCS) + 1e-6

    def test_snr_below_all_thresholds_contributes_zero(self):
        config = LinkConfig(tx_power_dbm=-100.0, overhead_fraction=0.35)
        result = band_throughput(ttd_set(), config, DEFAULT_MCS_LADDER, 4)
        assert result.total_bps == 0.0
        assert all(s.mcs is None and s.throughput_bps == 0.0 for s in result.subbands)

    def test_default_boresight_is_center_peak(self):
        pattern_set = ttd_set()
        peak = refine_peak(pattern_set.center_pattern).azimuth_deg
        by_default = band_throughput(pattern_set, CONFIG, DEFAULT_MCS_LADDER, 4)
        explicit = band_throughput(
            pattern_set, CONFIG, DEFAULT_MCS_LADDER, 4, boresight_deg=peak
        )
        assert by_default == explicit

    def test_empty_mcs_table_rejected(self):
        with pytest.raises(ValidationError):
            band_throughput(ttd_set(), CONFIG, (), 4)

    def test_unsorted_mcs_table_rejected(self):
        table = (DEFAULT_MCS_LADDER[2], DEFAULT_MCS_LADDER[0])
        with pytest.raises(ValidationError):
            band_throughput(ttd_set(), CONFIG, table, 4)

    def test_set_must_span_channel(self):
        config = LinkConfig(carrier_hz=29.4e9, bandwidth_hz=800e6)
        with pytest.raises(ValidationError):
            band_throughput(ttd_set(), config, DEFAULT_MCS_LADDER, 4)
