"""Command-line interface: simulate, kpi, sweep, link, ingest-kpi.

All numeric output uses fixed precision (angles 0.01 deg, dB quantities
0.1 dB, percentages 0.01 %, frequencies 1 Hz, rates 1 bit/s, lengths
1e-6 m, dimensionless ratios 6 significant digits), so reruns on the same
inputs are byte-identical. Files are written to a temporary name and
atomically renamed; module errors turn into one JSON object on stderr and
a nonzero exit.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from .errors import ConfigError, ToolkitError
from .explorer import pareto_front, run_sweep
from .link import LinkConfig, band_throughput
from .measurements import ingest_measurements
from .metrics import DpbqConvention, kpi_table
from .scenario import Scenario, load_scenario, synthesize_scenario

MEASUREMENT_SCHEMA_COMMENT = "# squintkit-measurements v1"
KPI_SCHEMA_COMMENT = "# squintkit-kpi v1"
SWEEP_SCHEMA_COMMENT = "# squintkit-sweep v1"
LINK_SCHEMA_COMMENT = "# squintkit-link v1"


def _q(value: float, digits: int) -> float:
    """Round for emission; collapse negative zero."""
    out = round(float(value), digits)
    return 0.0 if out == 0 else out


def fmt_angle(x: float) -> str:
    return f"{_q(x, 2):.2f}"


def fmt_db(x: float) -> str:
    return f"{_q(x, 1):.1f}"


def fmt_percent(x: float) -> str:
    return f"{_q(x, 2):.2f}"


def fmt_hz(x: float) -> str:
    return f"{x:.0f}"


def fmt_bps(x: float) -> str:
    return f"{x:.0f}"


def fmt_meters(x: float) -> str:
    return f"{_q(x, 6):.6f}"


def fmt_ratio(x: float) -> str:
    return f"{x:.6g}"


def _write_outputs(out_dir: Path, files: dict[str, str]) -> list[Path]:
    """Atomically write every file: temp in the target dir, then rename."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, content in files.items():
        target = out_dir / name
        fd, tmp = tempfile.mkstemp(dir=out_dir, prefix=f".{name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(content)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        written.append(target)
    return written


def _xy_file(pairs: list[tuple[str, str]]) -> str:
    return "".join(f"{x} {y}\n" for x, y in pairs)


def _pattern_files(pattern_set) -> dict[str, str]:
    lines = [MEASUREMENT_SCHEMA_COMMENT, "frequency_hz,azimuth_deg,power_dbi"]
    files: dict[str, str] = {}
    for pattern in pattern_set.patterns:
        angles = pattern.angles_deg()
        xy = []
        for angle, gain in zip(angles, pattern.gain_dbi):
            row = (fmt_hz(pattern.frequency_hz), fmt_angle(angle), fmt_db(gain))
            lines.append(",".join(row))
            xy.append((row[1], row[2]))
        files[f"pattern_{fmt_hz(pattern.frequency_hz)}Hz.xy"] = _xy_file(xy)
    files["patterns.csv"] = "\n".join(lines) + "\n"
    return files


def _kpi_files(rows) -> dict[str, str]:
    header = (
        "frequency_hz,peak_azimuth_deg,peak_gain_dbi,hpbw_deg,ad_deg,pd_db,dpbq_percent"
    )
    lines = [KPI_SCHEMA_COMMENT, header]
    records = []
    for row in rows:
        fields = (
            fmt_hz(row.frequency_hz),
            fmt_angle(row.peak_azimuth_deg),
            fmt_db(row.peak_gain_dbi),
            fmt_angle(row.hpbw_deg),
            fmt_angle(row.ad_deg),
            fmt_db(row.pd_db),
            fmt_percent(row.dpbq_percent),
        )
        lines.append(",".join(fields))
        records.append(
            {
                "frequency_hz": row.frequency_hz,
                "peak_azimuth_deg": _q(row.peak_azimuth_deg, 2),
                "peak_gain_dbi": _q(row.peak_gain_dbi, 1),
                "hpbw_deg": _q(row.hpbw_deg, 2),
                "ad_deg": _q(row.ad_deg, 2),
                "pd_db": _q(row.pd_db, 1),
                "dpbq_percent": _q(row.dpbq_percent, 2),
            }
        )
    files = {
        "kpi.csv": "\n".join(lines) + "\n",
        "kpi.json": json.dumps(records, indent=2, sort_keys=True) + "\n",
    }
    for column, formatter in (
        ("peak_azimuth_deg", fmt_angle),
        ("peak_gain_dbi", fmt_db),
        ("hpbw_deg", fmt_angle),
        ("ad_deg", fmt_angle),
        ("pd_db", fmt_db),
        ("dpbq_percent", fmt_percent),
    ):
        files[f"kpi_{column}.xy"] = _xy_file(
            [(fmt_hz(r.frequency_hz), formatter(getattr(r, column))) for r in rows]
        )
    return files


def _sweep_files(reports, front) -> dict[str, str]:
    header = (
        "relative_permittivity,loss_tangent,f_over_d,diameter_m,feed_exponent,"
        "peak_gain_dbi,total_loss_db,max_scan_deg,band_edge_dpbq_percent"
    )

    def rows_for(items):
        lines = []
        for rep in items:
            design = rep.design
            lines.append(
                ",".join(
                    (
                        fmt_ratio(design.material.relative_permittivity),
                        fmt_ratio(design.material.loss_tangent),
                        fmt_ratio(design.f_over_d),
                        fmt_meters(design.diameter_m),
                        fmt_ratio(design.feed_exponent),
                        fmt_db(rep.peak_gain_dbi),
                        fmt_db(rep.total_loss_db),
                        fmt_angle(rep.max_scan_deg),
                        fmt_percent(rep.band_edge_dpbq_percent),
                    )
                )
            )
        return lines

    files = {
        "sweep.csv": "\n".join([SWEEP_SCHEMA_COMMENT, header] + rows_for(reports)) + "\n",
        "pareto.csv": "\n".join([SWEEP_SCHEMA_COMMENT, header] + rows_for(front)) + "\n",
        "sweep_gain_vs_scan.xy": _xy_file(
            [(fmt_angle(r.max_scan_deg), fmt_db(r.peak_gain_dbi)) for r in reports]
        ),
        "pareto_gain_vs_scan.xy": _xy_file(
            [(fmt_angle(r.max_scan_deg), fmt_db(r.peak_gain_dbi)) for r in front]
        ),
    }
    return files


def _link_files(result) -> dict[str, str]:
    lines = [LINK_SCHEMA_COMMENT, "subband,center_hz,snr_db,mcs,throughput_bps"]
    for i, sub in enumerate(result.subbands):
        lines.append(
            ",".join(
                (
                    str(i),
                    fmt_hz(sub.center_hz),
                    fmt_db(sub.snr_db),
                    sub.mcs.name if sub.mcs is not None else "none",
                    fmt_bps(sub.throughput_bps),
                )
            )
        )
    lines.append(f"total,,,,{fmt_bps(result.total_bps)}")
    return {
        "link.csv": "\n".join(lines) + "\n",
        "link_snr_db.xy": _xy_file(
            [(fmt_hz(s.center_hz), fmt_db(s.snr_db)) for s in result.subbands]
        ),
        "link_throughput_bps.xy": _xy_file(
            [(fmt_hz(s.center_hz), fmt_bps(s.throughput_bps)) for s in result.subbands]
        ),
    }


def _parse_convention(text: str) -> DpbqConvention:
    parts = text.split(",")
    if len(parts) != 2:
        raise ConfigError(
            "--convention must be '<normalized|unnormalized>,<db|linear>'"
        )
    sinc, domain = (p.strip() for p in parts)
    domain_map = {"db": "decibel", "linear": "linear"}
    if domain not in domain_map:
        raise ConfigError(f"unknown gain domain {domain!r}; use 'db' or 'linear'")
    return DpbqConvention(sinc_kind=sinc, gain_domain=domain_map[domain])


def _convention_for(args, scenario: Scenario | None) -> DpbqConvention:
    if args.convention is not None:
        return _parse_convention(args.convention)
    if scenario is not None:
        return scenario.dpbq_convention
    return DpbqConvention()


def _reject_seedless(args) -> None:
    if getattr(args, "seedless", False):
        raise ConfigError(
            "--seedless is reserved: every computation is already deterministic "
            "and no RNG exists to disable"
        )


def _cmd_simulate(args) -> dict[str, str]:
    scenario = load_scenario(args.scenario)
    return _pattern_files(synthesize_scenario(scenario))


def _cmd_kpi(args) -> dict[str, str]:
    scenario = load_scenario(args.scenario)
    rows = kpi_table(synthesize_scenario(scenario), _convention_for(args, scenario))
    return _kpi_files(rows)


def _cmd_ingest_kpi(args) -> dict[str, str]:
    pattern_set = ingest_measurements(args.measurements, cf_hz=args.cf)
    rows = kpi_table(pattern_set, _convention_for(args, None))
    return _kpi_files(rows)


def _cmd_sweep(args) -> dict[str, str]:
    scenario = load_scenario(args.scenario)
    if scenario.sweep is None:
        raise ConfigError("sweep subcommand requires a [sweep] block in the scenario")
    reports = run_sweep(scenario.sweep, grid=scenario.grid)
    return _sweep_files(reports, pareto_front(reports))


def _cmd_link(args) -> dict[str, str]:
    scenario = load_scenario(args.scenario)
    pattern_set = synthesize_scenario(scenario)
    config = scenario.link if scenario.link is not None else LinkConfig()
    result = band_throughput(
        pattern_set, config, scenario.mcs_ladder, scenario.subbands
    )
    return _link_files(result)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squintkit",
        description="Beam-squint simulation and KPI analysis for mmWave front ends.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, scenario_arg=True):
        if scenario_arg:
            p.add_argument("scenario", help="scenario TOML file")
        p.add_argument("--out", default=".", help="output directory (default: .)")
        p.add_argument(
            "--convention",
            default=None,
            metavar="SINC,DOMAIN",
            help="DPBQ convention override: '<normalized|unnormalized>,<db|linear>'",
        )
        p.add_argument(
            "--seedless",
            action="store_true",
            help="reserved flag; rejected (outputs are always deterministic)",
        )

    common(sub.add_parser("simulate", help="synthesize patterns to CSV"))
    common(sub.add_parser("kpi", help="synthesize patterns and emit the KPI table"))
    common(sub.add_parser("sweep", help="evaluate the scenario's lens design sweep"))
    common(sub.add_parser("link", help="per-subband throughput over the channel"))
    ingest = sub.add_parser("ingest-kpi", help="KPI table from a measurement CSV")
    ingest.add_argument("measurements", help="measurement CSV file")
    ingest.add_argument("--cf", type=float, default=None, help="center frequency override, Hz")
    common(ingest, scenario_arg=False)
    return parser


_HANDLERS = {
    "simulate": _cmd_simulate,
    "kpi": _cmd_kpi,
    "sweep": _cmd_sweep,
    "link": _cmd_link,
    "ingest-kpi": _cmd_ingest_kpi,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _reject_seedless(args)
        files = _HANDLERS[args.command](args)
        written = _write_outputs(Path(args.out), files)
    except ToolkitError as exc:
        record = {"error": type(exc).__name__, "message": str(exc)}
        record.update(exc.payload())
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
        return 1
    for path in written:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
