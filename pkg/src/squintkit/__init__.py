"""squintkit: beam-squint simulation and KPI analysis for mmWave front ends.

Synthesizes frequency-dependent azimuth patterns for phase-shifter and
true-time-delay linear arrays and for hyperbolic dielectric lens antennas,
extracts squint KPIs (peak, HPBW, AD, PD, DPBQ), estimates link throughput
over a wideband channel, and sweeps lens design trade-offs.
"""

from .arrays import (
    ArrayDesign,
    Weighting,
    element_weights,
    half_wavelength,
    synthesize_array_pattern,
)
from .errors import (
    AlignmentError,
    BeamwidthUndefinedError,
    BoundaryPeakError,
    ConfigError,
    DomainError,
    GridError,
    RangeError,
    ResolutionError,
    SingularityError,
    ToolkitError,
    ValidationError,
)
from .explorer import (
    DesignReport,
    SweepSpec,
    evaluate_design,
    material_for_permittivity,
    max_scan_angle,
    pareto_front,
    run_sweep,
)
from .lens import (
    MATERIALS,
    ApertureField,
    LensDesign,
    Material,
    aperture_field,
    far_field_db,
    feed_exponent_for_edge_taper,
    lens_profile,
    rim_angle,
    scan_curve,
    synthesize_lens_pattern,
)
from .link import (
    DEFAULT_MCS_LADDER,
    BandThroughput,
    LinkConfig,
    McsScheme,
    SubbandReport,
    band_throughput,
    free_space_path_loss,
    throughput,
)
from .measurements import MeasurementRecord, ingest_measurements, read_measurement_rows
from .metrics import (
    DEFAULT_CONVENTION,
    DpbqConvention,
    KpiRow,
    PeakEstimate,
    dpbq,
    half_power_beamwidth,
    kpi_table,
    refine_peak,
    squint_deltas,
)
from .patterns import (
    DEFAULT_BAND,
    DEFAULT_GRID,
    SPEED_OF_LIGHT,
    AzimuthGrid,
    BeamPattern,
    FrequencyBand,
    PatternSet,
    interpolate_gain,
    sample_grid,
)
from .scenario import (
    Scenario,
    load_scenario,
    parse_scenario,
    serialize_scenario,
    synthesize_scenario,
)

__version__ = "0.1.0"
