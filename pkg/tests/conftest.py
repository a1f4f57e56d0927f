from pathlib import Path

import pytest

from squintkit import (
    ArrayDesign,
    AzimuthGrid,
    FrequencyBand,
    LensDesign,
    MATERIALS,
    Weighting,
    half_wavelength,
)

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def table1_csv() -> Path:
    return DATA_DIR / "table1_measurements.csv"


@pytest.fixture
def table1_golden() -> Path:
    return DATA_DIR / "table1_kpi_golden.csv"


@pytest.fixture
def coarse_grid() -> AzimuthGrid:
    """cheap grid for tests that do not need 0.01 deg resolution"""
    return AzimuthGrid(-60.0, 60.0, 0.05)


@pytest.fixture
def band() -> FrequencyBand:
    return FrequencyBand(28.5e9, 27.5e9, 29.5e9, 3)


@pytest.fixture
def default_lens() -> LensDesign:
    return LensDesign(MATERIALS["polyethylene"], diameter_m=0.060, f_over_d=0.7)


def make_array(
    n: int = 16,
    steer_deg: float = 30.0,
    weighting: Weighting = Weighting.PHASE_SHIFTER_AT_CF,
    element_exponent: float = 0.0,
    cf_hz: float = 28.5e9,
) -> ArrayDesign:
    return ArrayDesign(
        element_count=n,
        spacing_m=half_wavelength(cf_hz),
        weighting=weighting,
        steer_deg=steer_deg,
        element_exponent=element_exponent,
    )
