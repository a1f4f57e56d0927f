"""Scenario files: TOML configuration for the CLI front ends.

A scenario names one front end (phase-shifter array, TTD array, or lens),
its design block, and optional band/grid/link/DPBQ-convention/sweep
sections. Unknown keys are rejected; omitted sections fall back to
documented defaults. ``serialize_scenario`` emits the fully resolved
form, and load(serialize(load(x))) equals load(x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

try:
    import tomllib as _toml
except ModuleNotFoundError:  # python < 3.11
    import tomli as _toml

from .arrays import ArrayDesign, Weighting, half_wavelength, synthesize_array_pattern
from .errors import ConfigError, ValidationError
from .explorer import SweepSpec
from .lens import MATERIALS, LensDesign, Material, synthesize_lens_pattern
from .link import DEFAULT_MCS_LADDER, LinkConfig, McsScheme
from .metrics import DEFAULT_CONVENTION, DpbqConvention
from .patterns import (
    DEFAULT_BAND,
    DEFAULT_GRID,
    AzimuthGrid,
    FrequencyBand,
    PatternSet,
)

FRONT_ENDS = ("phase_shifter_array", "ttd_array", "lens")

DEFAULT_SUBBANDS = 8


@dataclass(frozen=True)
class Scenario:
    """A fully resolved simulation scenario."""

    front_end: str
    band: FrequencyBand
    grid: AzimuthGrid
    array: ArrayDesign | None = None
    lens: LensDesign | None = None
    link: LinkConfig | None = None
    dpbq_convention: DpbqConvention = DEFAULT_CONVENTION
    sweep: SweepSpec | None = None
    subbands: int = DEFAULT_SUBBANDS
    mcs_ladder: tuple[McsScheme, ...] = DEFAULT_MCS_LADDER

    def __post_init__(self):
        if self.front_end not in FRONT_ENDS:
            raise ValidationError(
                f"front_end must be one of {FRONT_ENDS}, got {self.front_end!r}"
            )
        if self.front_end == "lens":
            if self.lens is None or self.array is not None:
                raise ValidationError(
                    "front_end = 'lens' requires a lens block and forbids an array block"
                )
        else:
            if self.array is None or self.lens is not None:
                raise ValidationError(
                    f"front_end = {self.front_end!r} requires an array block and "
                    "forbids a lens block"
                )


class _Section:
    """A config mapping that tracks consumed keys and rejects leftovers."""

    def __init__(self, name: str, data: dict):
        if not isinstance(data, dict):
            raise ConfigError(f"section {name!r} must be a table")
        self.name = name
        self.data = dict(data)

    def take(self, key, default=None, required=False):
        if key in self.data:
            return self.data.pop(key)
        if required:
            raise ConfigError(f"missing required key {key!r} in section {self.name!r}")
        return default

    def take_number(self, key, default=None, required=False):
        value = self.take(key, default, required)
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{self.name}.{key} must be a number, got {value!r}")
        return value

    def take_int(self, key, default=None, required=False):
        value = self.take(key, default, required)
        if value is None:
            return None
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{self.name}.{key} must be an integer, got {value!r}")
        return value

    def take_str(self, key, default=None, required=False):
        value = self.take(key, default, required)
        if value is None:
            return None
        if not isinstance(value, str):
            raise ConfigError(f"{self.name}.{key} must be a string, got {value!r}")
        return value

    def finish(self):
        if self.data:
            raise ConfigError(
                f"unknown keys in section {self.name!r}: {sorted(self.data)}"
            )


def _parse_band(raw: dict | None) -> FrequencyBand:
    if raw is None:
        return DEFAULT_BAND
    sec = _Section("band", raw)
    band = FrequencyBand(
        center_hz=sec.take_number("center_hz", DEFAULT_BAND.center_hz),
        lower_hz=sec.take_number("lower_hz", DEFAULT_BAND.lower_hz),
        upper_hz=sec.take_number("upper_hz", DEFAULT_BAND.upper_hz),
        sample_count=sec.take_int("sample_count", DEFAULT_BAND.sample_count),
    )
    sec.finish()
    return band


def _parse_grid(raw: dict | None) -> AzimuthGrid:
    if raw is None:
        return DEFAULT_GRID
    sec = _Section("grid", raw)
    grid = AzimuthGrid(
        start_deg=sec.take_number("start_deg", DEFAULT_GRID.start_deg),
        stop_deg=sec.take_number("stop_deg", DEFAULT_GRID.stop_deg),
        step_deg=sec.take_number("step_deg", DEFAULT_GRID.step_deg),
    )
    sec.finish()
    return grid


def _parse_material(value) -> Material:
    if isinstance(value, str):
        if value not in MATERIALS:
            raise ConfigError(
                f"unknown material {value!r}; catalog: {sorted(MATERIALS)}"
            )
        return MATERIALS[value]
    sec = _Section("lens.material", value)
    material = Material(
        relative_permittivity=sec.take_number("relative_permittivity", required=True),
        loss_tangent=sec.take_number("loss_tangent", required=True),
        name=sec.take_str("name", ""),
    )
    sec.finish()
    return material


def _parse_lens(raw: dict) -> LensDesign:
    sec = _Section("lens", raw)
    design = LensDesign(
        material=_parse_material(sec.take("material", required=True)),
        diameter_m=sec.take_number("diameter_m", required=True),
        f_over_d=sec.take_number("f_over_d", required=True),
        feed_offset_m=sec.take_number("feed_offset_m", 0.0),
        aperture_samples=sec.take_int("aperture_samples", LensDesign.aperture_samples),
        feed_exponent=sec.take_number("feed_exponent"),
    )
    sec.finish()
    return design


def _parse_array(raw: dict, front_end: str, band: FrequencyBand) -> ArrayDesign:
    sec = _Section("array", raw)
    weighting = (
        Weighting.PHASE_SHIFTER_AT_CF
        if front_end == "phase_shifter_array"
        else Weighting.TRUE_TIME_DELAY
    )
    design = ArrayDesign(
        element_count=sec.take_int("element_count", required=True),
        spacing_m=sec.take_number("spacing_m", half_wavelength(band.center_hz)),
        weighting=weighting,
        steer_deg=sec.take_number("steer_deg", 0.0),
        element_exponent=sec.take_number("element_exponent", 1.0),
    )
    sec.finish()
    return design


def _parse_code_rate(value) -> Fraction:
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"bad code_rate {value!r}: {exc}") from exc
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"code_rate must be a string fraction or number, got {value!r}")
    return Fraction(value).limit_denominator(10000)


def _parse_mcs_ladder(raw: list | None) -> tuple[McsScheme, ...]:
    if raw is None:
        return DEFAULT_MCS_LADDER
    if not isinstance(raw, list) or not raw:
        raise ConfigError("link.mcs must be a non-empty array of tables")
    ladder = []
    for i, entry in enumerate(raw):
        sec = _Section(f"link.mcs[{i}]", entry)
        ladder.append(
            McsScheme(
                modulation_order=sec.take_int("modulation_order", required=True),
                code_rate=_parse_code_rate(sec.take("code_rate", required=True)),
                min_snr_db=sec.take_number("min_snr_db", required=True),
                name=sec.take_str("name", ""),
            )
        )
        sec.finish()
    return tuple(ladder)


def _parse_link(raw: dict | None) -> tuple[LinkConfig | None, int, tuple[McsScheme, ...]]:
    if raw is None:
        return None, DEFAULT_SUBBANDS, DEFAULT_MCS_LADDER
    sec = _Section("link", raw)
    defaults = LinkConfig()
    mcs_raw = sec.take("mcs")
    config = LinkConfig(
        carrier_hz=sec.take_number("carrier_hz", defaults.carrier_hz),
        bandwidth_hz=sec.take_number("bandwidth_hz", defaults.bandwidth_hz),
        distance_m=sec.take_number("distance_m", defaults.distance_m),
        tx_power_dbm=sec.take_number("tx_power_dbm", defaults.tx_power_dbm),
        overhead_fraction=sec.take_number("overhead_fraction", defaults.overhead_fraction),
        noise_figure_db=sec.take_number("noise_figure_db", defaults.noise_figure_db),
    )
    subbands = sec.take_int("subbands", DEFAULT_SUBBANDS)
    sec.finish()
    return config, subbands, _parse_mcs_ladder(mcs_raw)


def _parse_value_list(sec: _Section, key: str) -> tuple[float, ...]:
    values = sec.take(key, required=True)
    if not isinstance(values, list) or not values:
        raise ConfigError(f"sweep.{key} must be a non-empty list of numbers")
    out = []
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"sweep.{key} must contain only numbers, got {v!r}")
        out.append(float(v))
    return tuple(out)


def _parse_sweep(raw: dict | None, band: FrequencyBand) -> SweepSpec | None:
    if raw is None:
        return None
    sec = _Section("sweep", raw)
    spec = SweepSpec(
        permittivity_values=_parse_value_list(sec, "permittivity_values"),
        f_over_d_values=_parse_value_list(sec, "f_over_d_values"),
        diameter_values=_parse_value_list(sec, "diameter_values"),
        band=band,
        scan_loss_limit_db=sec.take_number("scan_loss_limit_db", 3.0),
    )
    sec.finish()
    return spec


def _parse_dpbq(raw: dict | None) -> DpbqConvention:
    if raw is None:
        return DEFAULT_CONVENTION
    sec = _Section("dpbq", raw)
    convention = DpbqConvention(
        sinc_kind=sec.take_str("sinc", DEFAULT_CONVENTION.sinc_kind),
        gain_domain=sec.take_str("domain", DEFAULT_CONVENTION.gain_domain),
    )
    sec.finish()
    return convention


def parse_scenario(text: str) -> Scenario:
    """Parse scenario TOML text into a validated Scenario."""
    try:
        raw = _toml.loads(text)
    except _toml.TOMLDecodeError as exc:
        raise ConfigError(f"scenario parse error: {exc}") from exc
    top = _Section("scenario", raw)
    front_end = top.take_str("front_end", required=True)
    if front_end not in FRONT_ENDS:
        raise ConfigError(f"front_end must be one of {FRONT_ENDS}, got {front_end!r}")
    band = _parse_band(top.take("band"))
    grid = _parse_grid(top.take("grid"))
    lens_raw = top.take("lens")
    array_raw = top.take("array")
    if front_end == "lens":
        if array_raw is not None:
            raise ConfigError("front_end = 'lens' forbids an [array] block")
        if lens_raw is None:
            raise ConfigError("front_end = 'lens' requires a [lens] block")
        lens, array = _parse_lens(lens_raw), None
    else:
        if lens_raw is not None:
            raise ConfigError(f"front_end = {front_end!r} forbids a [lens] block")
        if array_raw is None:
            raise ConfigError(f"front_end = {front_end!r} requires an [array] block")
        lens, array = None, _parse_array(array_raw, front_end, band)
    link, subbands, mcs_ladder = _parse_link(top.take("link"))
    convention = _parse_dpbq(top.take("dpbq"))
    sweep = _parse_sweep(top.take("sweep"), band)
    top.finish()
    return Scenario(
        front_end=front_end,
        band=band,
        grid=grid,
        array=array,
        lens=lens,
        link=link,
        dpbq_convention=convention,
        sweep=sweep,
        subbands=subbands,
        mcs_ladder=mcs_ladder,
    )


def load_scenario(path: str | Path) -> Scenario:
    """Load and validate a scenario file."""
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"scenario file not found: {path}")
    return parse_scenario(path.read_text(encoding="utf-8"))


def synthesize_scenario(scenario: Scenario) -> PatternSet:
    """Run the scenario's front end over its band and grid."""
    if scenario.lens is not None:
        return synthesize_lens_pattern(scenario.lens, scenario.band, scenario.grid)
    return synthesize_array_pattern(scenario.array, scenario.band, scenario.grid)


def _fmt(value) -> str:
    if isinstance(value, bool):
        raise ConfigError(f"cannot serialize boolean {value!r}")  # pragma: no cover
    if isinstance(value, str):
        return '"' + value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def serialize_scenario(scenario: Scenario) -> str:
    """Emit the fully resolved scenario as canonical TOML."""
    lines = [f"front_end = {_fmt(scenario.front_end)}", ""]

    band = scenario.band
    lines += [
        "[band]",
        f"center_hz = {_fmt(band.center_hz)}",
        f"lower_hz = {_fmt(band.lower_hz)}",
        f"upper_hz = {_fmt(band.upper_hz)}",
        f"sample_count = {_fmt(band.sample_count)}",
        "",
    ]
    grid = scenario.grid
    lines += [
        "[grid]",
        f"start_deg = {_fmt(grid.start_deg)}",
        f"stop_deg = {_fmt(grid.stop_deg)}",
        f"step_deg = {_fmt(grid.step_deg)}",
        "",
    ]
    if scenario.lens is not None:
        lens = scenario.lens
        catalog = MATERIALS.get(lens.material.name)
        lines += ["[lens]"]
        if catalog == lens.material:
            lines += [f"material = {_fmt(lens.material.name)}"]
        lines += [
            f"diameter_m = {_fmt(lens.diameter_m)}",
            f"f_over_d = {_fmt(lens.f_over_d)}",
            f"feed_offset_m = {_fmt(lens.feed_offset_m)}",
            f"aperture_samples = {_fmt(lens.aperture_samples)}",
            f"feed_exponent = {_fmt(lens.feed_exponent)}",
        ]
        if catalog != lens.material:
            lines += [
                "",
                "[lens.material]",
                f"name = {_fmt(lens.material.name)}",
                f"relative_permittivity = {_fmt(lens.material.relative_permittivity)}",
                f"loss_tangent = {_fmt(lens.material.loss_tangent)}",
            ]
        lines += [""]
    if scenario.array is not None:
        array = scenario.array
        lines += [
            "[array]",
            f"element_count = {_fmt(array.element_count)}",
            f"spacing_m = {_fmt(array.spacing_m)}",
            f"steer_deg = {_fmt(array.steer_deg)}",
            f"element_exponent = {_fmt(array.element_exponent)}",
            "",
        ]
    if scenario.link is not None:
        link = scenario.link
        lines += [
            "[link]",
            f"carrier_hz = {_fmt(link.carrier_hz)}",
            f"bandwidth_hz = {_fmt(link.bandwidth_hz)}",
            f"distance_m = {_fmt(link.distance_m)}",
            f"tx_power_dbm = {_fmt(link.tx_power_dbm)}",
            f"overhead_fraction = {_fmt(link.overhead_fraction)}",
            f"noise_figure_db = {_fmt(link.noise_figure_db)}",
            f"subbands = {_fmt(scenario.subbands)}",
        ]
        for mcs in scenario.mcs_ladder:
            lines += [
                "",
                "[[link.mcs]]",
                f"name = {_fmt(mcs.name)}",
                f"modulation_order = {_fmt(mcs.modulation_order)}",
                f'code_rate = "{mcs.code_rate.numerator}/{mcs.code_rate.denominator}"',
                f"min_snr_db = {_fmt(mcs.min_snr_db)}",
            ]
        lines += [""]
    if scenario.sweep is not None:
        sweep = scenario.sweep
        def _list(values):
            return "[" + ", ".join(_fmt(v) for v in values) + "]"
        lines += [
            "[sweep]",
            f"permittivity_values = {_list(sweep.permittivity_values)}",
            f"f_over_d_values = {_list(sweep.f_over_d_values)}",
            f"diameter_values = {_list(sweep.diameter_values)}",
            f"scan_loss_limit_db = {_fmt(sweep.scan_loss_limit_db)}",
            "",
        ]
    dpbq = scenario.dpbq_convention
    lines += [
        "[dpbq]",
        f"sinc = {_fmt(dpbq.sinc_kind)}",
        f"domain = {_fmt(dpbq.gain_domain)}",
        "",
    ]
    return "\n".join(lines)
