"""Study configuration: JSON documents validated against ``config_schema.json``.

Two document shapes exist. A *study* describes one KPI sweep; a *report*
bundle (top-level ``report`` key) lists study files to run in sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from mmkpi.antenna import AntennaConfig
from mmkpi.errors import (
    ConfigFileMissingError,
    ConfigInvariantError,
    ConfigSchemaError,
    ConfigSyntaxError,
    DomainError,
)
from mmkpi.kpi import CellShape, SearchMethod, StrandStudy, SweepPoint
from mmkpi.linkbudget import CarrierConfig
from mmkpi.mobility import MobilityCoefficients
from mmkpi.propagation import O2IParams, PathLossKind, PathLossParams
from mmkpi.simulator import Scenario
from mmkpi.strand import Strand

# Per-band propagation defaults. Close-in NLOS values follow the NYU urban
# measurement campaigns at 28/38/73 GHz; 6 GHz uses WINNER II C2 NLOS with a
# 25 m mast, rewritten as n = 3.574 and a -3.58 dB offset on FSPL(6 GHz, 1 m).
# All are assumptions: override them per band in the config.
DEFAULT_PATHLOSS_BANDS: dict[str, PathLossParams] = {
    "6": PathLossParams(PathLossKind.WINNER_URBAN, 3.574, 8.0, 1.0, -3.58),
    "28": PathLossParams(PathLossKind.CLOSE_IN, 3.4, 9.7, 1.0),
    "38": PathLossParams(PathLossKind.CLOSE_IN, 3.4, 9.7, 1.0),
    "73": PathLossParams(PathLossKind.CLOSE_IN, 3.3, 7.6, 1.0),
}

DEFAULT_PATHLOSS = PathLossParams(PathLossKind.CLOSE_IN, 3.4, 9.7, 1.0)

# placeholder carrier for the scenario template; every sweep row replaces it
_TEMPLATE_FREQUENCY_HZ = 6e9
_TEMPLATE_BANDWIDTH_HZ = 500e6


def band_label(frequency_ghz: float) -> str:
    return f"{frequency_ghz:g}"


@dataclass(frozen=True)
class StudyConfig:
    path: Path
    kpi: str | None
    strand: Strand
    study: StrandStudy
    mobility: MobilityCoefficients
    raw: dict[str, Any] = field(repr=False, default_factory=dict)

    @property
    def frequencies_hz(self) -> tuple[float, ...]:
        return tuple(p.frequency_hz for p in self.study.points)

    def with_seed(self, seed: int) -> StudyConfig:
        template = replace(self.study.template, seed=seed)
        return replace(self, study=replace(self.study, template=template))


@dataclass(frozen=True)
class ReportEntry:
    kpi: str
    config: StudyConfig
    strand: Strand | None = None


@dataclass(frozen=True)
class ReportConfig:
    path: Path
    entries: tuple[ReportEntry, ...]


def load_schema() -> dict:
    text = resources.files("mmkpi").joinpath("config_schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _validate(doc: Any, schema: dict, path: Path):
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        lines = [f"{path}: {e.json_path}: {e.message}" for e in errors]
        raise ConfigSchemaError("\n".join(lines))


def _read_json(path: Path) -> Any:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as exc:
        raise ConfigFileMissingError(f"{path}: no such config file") from exc
    except OSError as exc:
        raise ConfigFileMissingError(f"{path}: cannot read config: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigSyntaxError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def parse_config(path: str | Path, _in_bundle: bool = False) -> StudyConfig | ReportConfig:
    """Read, schema-check and convert a config file."""
    path = Path(path)
    doc = _read_json(path)
    schema = load_schema()
    if isinstance(doc, dict) and "report" in doc:
        if _in_bundle:
            raise ConfigSchemaError(f"{path}: nested report bundles are not allowed")
        report_schema = dict(schema["$defs"]["report"])
        report_schema["$defs"] = schema["$defs"]
        _validate(doc, report_schema, path)
        entries = []
        for item in doc["report"]:
            sub = parse_config(path.parent / item["config"], _in_bundle=True)
            strand = Strand.parse(item["strand"]) if "strand" in item else None
            entries.append(ReportEntry(item["kpi"], sub, strand))
        return ReportConfig(path, tuple(entries))
    _validate(doc, schema, path)
    return build_study(doc, path)


class _Section:
    """Turns DomainError raised while building one section into a located error."""

    def __init__(self, where: str):
        self.where = where

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc_type is not None and issubclass(exc_type, DomainError):
            raise ConfigInvariantError(self.where, str(exc)) from exc
        return False


def _pathloss_block(block: dict) -> PathLossParams:
    block = {k: v for k, v in block.items() if k != "note"}
    return PathLossParams(**block)


def build_study(doc: dict, path: Path = Path("<config>")) -> StudyConfig:
    carrier_doc = doc.get("carrier", {})
    antenna_doc = dict(doc.get("antenna", {}))
    deploy = doc.get("deployment", {})
    cov = doc.get("coverage", {})
    cap = doc.get("capacity", {})
    sweep = doc["sweep"]
    strand = Strand.parse(doc.get("strand", 1))

    with _Section("$.carrier"):
        bandwidth_hz = carrier_doc.get("bandwidth_mhz", _TEMPLATE_BANDWIDTH_HZ / 1e6) * 1e6
        carrier = CarrierConfig(
            frequency_hz=_TEMPLATE_FREQUENCY_HZ,
            bandwidth_hz=bandwidth_hz,
            tx_power_dbm=carrier_doc.get("tx_power_dbm", 30.0),
            eirp_dbm=carrier_doc.get("eirp_dbm"),
            noise_figure_db=carrier_doc.get("noise_figure_db", 0.0),
            temperature_k=carrier_doc.get("temperature_k", 290.0),
            utilization_rho=carrier_doc.get("utilization_rho", 1.0),
        )
        fraction = carrier_doc.get("bandwidth_fraction")
        if fraction is not None and not 0 < fraction <= 1:
            raise DomainError("bandwidth_fraction must lie in (0, 1]")

    with _Section("$.antenna"):
        base_ghz = antenna_doc.pop("base_frequency_ghz", 10.0)
        base_count = antenna_doc.pop("base_count", 4)
        fixed_count = antenna_doc.pop("fixed_count", 32)
        antenna = AntennaConfig(**antenna_doc)
        if base_ghz <= 0:
            raise DomainError("base_frequency_ghz must be positive")
        for name, count in (("base_count", base_count), ("fixed_count", fixed_count)):
            if count < 1 or count & (count - 1):
                raise DomainError(f"{name} must be a power of two, got {count}")

    # the built-in band table applies only when the config has no pathloss section
    pl_doc = doc.get("pathloss")
    bands = dict(DEFAULT_PATHLOSS_BANDS) if pl_doc is None else {}
    pl_doc = pl_doc or {}
    default_pl = DEFAULT_PATHLOSS
    with _Section("$.pathloss.default"):
        if "default" in pl_doc:
            default_pl = _pathloss_block(pl_doc["default"])
    for label, block in pl_doc.get("bands", {}).items():
        with _Section(f"$.pathloss.bands.{label}"):
            bands[label] = _pathloss_block(block)

    o2i = None
    if "o2i" in doc:
        with _Section("$.o2i"):
            o2i = O2IParams(**doc["o2i"])

    with _Section("$.deployment"):
        template = Scenario(
            strand=strand,
            carrier=carrier,
            antenna=antenna,
            pathloss=default_pl,
            cell_radius_m=deploy.get("cell_radius_m", 100.0),
            o2i=o2i,
            ring_count=deploy.get("ring_count", 2),
            users_per_cell=deploy.get("users_per_cell", 10),
            drops=deploy.get("drops", 200),
            seed=doc.get("seed", 0),
            user_placement=deploy.get("user_placement", "CellEdgeAnnulus"),
            interference_mode=deploy.get("interference_mode", "Full"),
            edge_annulus_fraction=deploy.get("edge_annulus_fraction", 0.95),
            interferer_gain_db=deploy.get("interferer_gain_db", 0.0),
        )

    with _Section("$.mobility"):
        mob = doc.get("mobility", {})
        coeffs = MobilityCoefficients(
            m_ta=mob.get("m_ta", 2.0),
            m_d=mob.get("m_d", 1.0),
            m_coh=mob.get("m_coh", 1.0),
            mark_ref=mob.get("mark_ref", 10.0),
            f_ref_hz=mob.get("f_ref_ghz", 6.0) * 1e9,
        )

    points = []
    raw_points = [{"frequency_ghz": f} for f in sweep.get("frequencies_ghz", [])]
    raw_points += sweep.get("points", [])
    for i, p in enumerate(raw_points):
        where = f"$.sweep.points[{i}]"
        with _Section(where):
            f_ghz = p["frequency_ghz"]
            if not f_ghz > 0:
                raise DomainError("frequency_ghz must be positive")
            label = p.get("pathloss")
            if label is not None and label not in bands:
                raise ConfigInvariantError(where, f"unknown pathloss band {label!r}")
            pl = bands.get(label if label is not None else band_label(f_ghz))
            for key in ("bandwidth_mhz", "cell_radius_m", "area_capacity_gbps_per_km2"):
                if key in p and not p[key] > 0:
                    raise DomainError(f"{key} must be positive")
            points.append(
                SweepPoint(
                    frequency_hz=f_ghz * 1e9,
                    bandwidth_hz=p["bandwidth_mhz"] * 1e6 if "bandwidth_mhz" in p else None,
                    antennas=p.get("antennas"),
                    cell_radius_m=p.get("cell_radius_m"),
                    area_capacity_bps_per_km2=(
                        p["area_capacity_gbps_per_km2"] * 1e9 if "area_capacity_gbps_per_km2" in p else None
                    ),
                    pathloss=pl,
                )
            )

    with _Section("$.coverage"):
        target = cov.get("target_rate_mbps", 100.0) * 1e6
        pct = cov.get("percentile", 0.95)
        grid = tuple(float(r) for r in cov.get("radius_grid_m", (50, 100, 150, 200, 250)))
        if not target > 0:
            raise DomainError("target_rate_mbps must be positive")
        if not 0 < pct <= 1:
            raise DomainError("percentile must lie in (0, 1]")
        if any(r <= 0 for r in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
            raise DomainError("radius_grid_m must be positive and strictly increasing")
        ref_r = cov.get("reference_radius_m")
        if ref_r is not None and not ref_r > 0:
            raise DomainError("reference_radius_m must be positive")

    study = StrandStudy(
        template=template,
        points=tuple(points),
        antenna_base_hz=base_ghz * 1e9,
        antenna_base_count=base_count,
        fixed_antennas=fixed_count,
        fixed_bandwidth_hz=bandwidth_hz,
        bandwidth_fraction=fraction,
        target_rate_bps=target,
        percentile_p=pct,
        radius_grid_m=grid,
        search=SearchMethod(cov.get("search", "binary")),
        reference_radius_m=ref_r,
        enforce_capacity_window=cap.get("enforce_window", True),
        cell_shape=CellShape(deploy.get("cell_shape", "hex")),
    )
    return StudyConfig(path, doc.get("kpi"), strand, study, coeffs, doc)
