"""mmkpi command-line front end.

    mmkpi <coverage|capacity|mobility|report> --config PATH
          [--out PATH] [--format csv|json|table] [--seed N] [--strand 1|2]
          [--plot-data PATH]

Exit codes: 0 success, 1 usage error, 2 config error, 3 runtime error.
Without --out the formatted report goes to stdout; with --out it is written
to the file and the text table is printed instead.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from mmkpi.antenna import AntennaConfig, GainModel, capped_combined_gain_dbi
from mmkpi.config import ReportConfig, ReportEntry, StudyConfig, parse_config
from mmkpi.errors import ConfigError
from mmkpi.kpi import run_strand_table
from mmkpi.mobility import mobility_report
from mmkpi.report import CSV_COLUMNS, FomReport, format_table
from mmkpi.strand import Strand

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

COMMANDS = ("coverage", "capacity", "mobility", "report")
FORMATS = ("csv", "json", "table")

# gain-vs-frequency sweep of the capped aperture gain
GAIN_SWEEP_GHZ = np.linspace(6.0, 100.0, 189)

log = logging.getLogger("mmkpi")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunManifest:
    command: str
    config_path: Path
    output_path: Path | None = None
    format: str = "table"
    seed_override: int | None = None
    strand_override: int | None = None
    plot_path: Path | None = None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mmkpi", description="mm-wave coverage/capacity/mobility figures of merit")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", required=True, type=Path, help="JSON study or report config")
    parser.add_argument("--out", type=Path, help="output file (default: stdout)")
    parser.add_argument("--format", choices=FORMATS, default="table")
    parser.add_argument("--seed", type=int, help="override the config seed")
    parser.add_argument("--strand", type=int, choices=(1, 2), help="override the config strand")
    parser.add_argument("--plot-data", type=Path, help="write two-column plot series here")
    return parser


def run_study(kpi: str, cfg: StudyConfig, strand: Strand | None = None) -> FomReport:
    strand = strand or cfg.strand
    if kpi == "mobility":
        return mobility_report(cfg.frequencies_hz, cfg.mobility, strand)
    return run_strand_table(kpi, strand, cfg.study)


def _entries(manifest: RunManifest, cfg: StudyConfig | ReportConfig) -> list[ReportEntry]:
    strand = Strand.parse(manifest.strand_override) if manifest.strand_override else None
    if isinstance(cfg, ReportConfig):
        if manifest.command != "report":
            raise UsageError(f"{cfg.path} is a report bundle; use 'mmkpi report'")
        return [replace(e, strand=strand or e.strand) for e in cfg.entries]
    if manifest.command == "report":
        if cfg.kpi is None:
            raise UsageError(f"{cfg.path} names no kpi; run a KPI command instead")
        return [ReportEntry(cfg.kpi, cfg, strand)]
    if cfg.kpi is not None and cfg.kpi != manifest.command:
        raise UsageError(f"{cfg.path} is a {cfg.kpi} config, not {manifest.command}")
    return [ReportEntry(manifest.command, cfg, strand)]


def render(reports: list[FomReport], fmt: str, bundle: bool) -> str:
    if fmt == "table":
        return "\n".join(format_table(r) for r in reports)
    if fmt == "json":
        if not bundle:
            return reports[0].to_json()
        docs = [json.loads(r.to_json()) for r in reports]
        return json.dumps({"reports": docs}, indent=2, allow_nan=False) + "\n"
    body = [reports[0].to_csv()]
    header = ",".join(CSV_COLUMNS) + "\n"
    body += [r.to_csv()[len(header):] for r in reports[1:]]
    return "".join(body)


def plot_series(reports, antenna: AntennaConfig | None = None) -> str:
    """Two-column series blocks, separated by two blank lines (gnuplot 'index')."""
    if isinstance(reports, FomReport):
        reports = [reports]
    antenna = replace(antenna or AntennaConfig(), gain_model=GainModel.APERTURE)
    blocks = []
    for rep in reports:
        lines = [f"# series: {rep.kpi} strand {rep.strand} fom", "# frequency_ghz fom"]
        lines += [f"{r.frequency_ghz!r} {r.fom!r}" for r in rep.rows]
        blocks.append("\n".join(lines))
    gains = capped_combined_gain_dbi(antenna, GAIN_SWEEP_GHZ * 1e9)
    lines = [
        f"# series: capped aperture gain, area {antenna.aperture_area_m2:g} m^2, "
        f"rx {antenna.rx_gain_dbi:g} dBi, cap {antenna.combined_gain_cap_dbi:g} dBi",
        "# frequency_ghz gain_dbi",
    ]
    lines += [f"{float(f)!r} {float(g)!r}" for f, g in zip(GAIN_SWEEP_GHZ, gains)]
    blocks.append("\n".join(lines))
    return "\n\n\n".join(blocks) + "\n"


def emit_plot_data(report, path: Path, antenna: AntennaConfig | None = None) -> Path:
    if isinstance(report, FomReport) and not report.rows:
        raise ValueError("cannot plot an empty report")
    _atomic_write(Path(path), plot_series(report, antenna))
    return Path(path)


def _atomic_write(path: Path, text: str):
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def execute(manifest: RunManifest, stdout=None) -> int:
    stdout = stdout or sys.stdout
    cfg = parse_config(manifest.config_path)
    entries = _entries(manifest, cfg)
    if manifest.seed_override is not None:
        entries = [replace(e, config=e.config.with_seed(manifest.seed_override)) for e in entries]

    reports = [run_study(e.kpi, e.config, e.strand) for e in entries]
    for rep in reports:
        for rej in rep.rejected:
            log.warning("%s strand %d: %g GHz rejected: %s", rep.kpi, rep.strand, rej.frequency_ghz, rej.reason)
    if not any(rep.rows for rep in reports):
        raise RuntimeError("no sweep point produced a result")

    bundle = manifest.command == "report"
    text = render(reports, manifest.format, bundle)
    # write every file before touching stdout so a failure leaves nothing half-done
    if manifest.plot_path is not None:
        emit_plot_data(reports, manifest.plot_path, entries[0].config.study.template.antenna)
    if manifest.output_path is not None:
        _atomic_write(manifest.output_path, text)
        stdout.write(render(reports, "table", bundle))
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s", stream=sys.stderr)
    args = build_parser().parse_args(argv)
    manifest = RunManifest(
        command=args.command,
        config_path=args.config,
        output_path=args.out,
        format=args.format,
        seed_override=args.seed,
        strand_override=args.strand,
        plot_path=args.plot_data,
    )
    if manifest.seed_override is not None and not 0 <= manifest.seed_override < 2**64:
        print("mmkpi: error: --seed must be a non-negative 64-bit integer", file=sys.stderr)
        return EXIT_USAGE
    try:
        return execute(manifest)
    except UsageError as exc:
        print(f"mmkpi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        print(f"mmkpi: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - any model failure maps to exit 3
        print(f"mmkpi: runtime error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
