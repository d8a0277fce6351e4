"""Coverage and capacity figures of merit for both strands.

Coverage: largest cell radius on a discrete grid whose cell-edge rate
percentile meets a target; FoM = 10 / (R_ref / R)^2 capped at 10.

Capacity: area capacity = cell density * users per cell * average rate;
FoM = 10 * capacity / reference capacity capped at 10.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field, replace

from mmkpi.antenna import AntennaConfig, GainModel, required_antenna_count, split_antenna_count
from mmkpi.errors import DomainError
from mmkpi.linkbudget import MM_WAVE_RANGE_HZ
from mmkpi.propagation import PathLossParams
from mmkpi.report import FomReport, FomRow, RejectedRow
from mmkpi.simulator import Scenario, percentile, run_scenario
from mmkpi.strand import Strand

log = logging.getLogger(__name__)

FOM_MAX = 10.0

# frequency ranges over which the capacity strands can be analysed
CAPACITY_WINDOWS_HZ = {
    Strand.S1_FIXED_BW: (6e9, 20e9),
    Strand.S2_FIXED_ANTENNAS: (20e9, 100e9),
}


class Kpi(str, enum.Enum):
    COVERAGE = "coverage"
    CAPACITY = "capacity"


class CellShape(str, enum.Enum):
    HEX = "hex"
    CIRCLE = "circle"


class SearchMethod(str, enum.Enum):
    BINARY = "binary"
    LINEAR = "linear"


@dataclass(frozen=True)
class CoverageResult:
    frequency_hz: float
    chosen_radius_m: float
    reference_radius_m: float
    cells_needed: float
    fom: float
    achieved_edge_rate_bps: float | None = None


@dataclass(frozen=True)
class CapacityResult:
    frequency_hz: float
    area_capacity_bps_per_km2: float
    reference_capacity: float
    fom: float


@dataclass(frozen=True)
class RadiusSearch:
    """Outcome of a coverage radius search.

    When infeasible, ``radius_m`` is None and ``edge_rate_bps`` is the best
    rate seen on the grid.
    """

    feasible: bool
    radius_m: float | None
    edge_rate_bps: float
    evaluated: dict[float, float] = field(default_factory=dict)


def cells_needed(reference_radius_m: float, radius_m: float) -> float:
    if not (reference_radius_m > 0 and radius_m > 0):
        raise DomainError("radii must be positive")
    return (reference_radius_m / radius_m) ** 2


def coverage_fom(cells: float) -> float:
    if cells < 1:
        log.warning("cells needed %.4g < 1; FoM clamped to %g", cells, FOM_MAX)
        return FOM_MAX
    return min(FOM_MAX, FOM_MAX / cells)


def hex_cell_area_m2(cell_radius_m: float) -> float:
    return 1.5 * math.sqrt(3.0) * cell_radius_m**2


def cell_density_per_km2(cell_radius_m: float, shape: CellShape = CellShape.HEX) -> float:
    if not cell_radius_m > 0:
        raise DomainError("cell radius must be positive")
    if CellShape(shape) is CellShape.CIRCLE:
        area = math.pi * cell_radius_m**2
    else:
        area = hex_cell_area_m2(cell_radius_m)
    return 1e6 / area


def area_capacity(density_per_km2: float, users_per_cell: float, avg_rate_bps: float) -> float:
    if density_per_km2 <= 0 or users_per_cell <= 0 or avg_rate_bps < 0:
        raise DomainError("area capacity factors must be positive")
    return density_per_km2 * users_per_cell * avg_rate_bps


def capacity_fom(capacity: float, reference_capacity: float) -> float:
    if not reference_capacity > 0:
        raise DomainError("reference capacity must be positive")
    return min(FOM_MAX, FOM_MAX * capacity / reference_capacity)


def edge_rate_bps(
    scenario: Scenario, radius_m: float, percentile_p: float, workers: int | None = None
) -> float:
    cdf = run_scenario(replace(scenario, cell_radius_m=radius_m), workers=workers)
    return percentile(cdf, percentile_p)


def coverage_min_radius(
    scenario_template: Scenario,
    target_rate_bps: float,
    radius_grid,
    percentile_p: float = 0.95,
    search: SearchMethod | str = SearchMethod.BINARY,
    workers: int | None = None,
) -> RadiusSearch:
    """Largest grid radius whose edge-rate percentile reaches ``target_rate_bps``.

    Binary search relies on feasibility being monotone (feasible at small
    radii, infeasible beyond some point). That holds for the simulator because
    drops use common random numbers scaled by radius; the linear scan makes no
    such assumption.
    """
    grid = [float(r) for r in radius_grid]
    if not grid:
        raise DomainError("radius grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise DomainError("radius grid must be strictly increasing")
    if not target_rate_bps > 0:
        raise DomainError("target rate must be positive")

    evaluated: dict[float, float] = {}

    def rate_at(i: int) -> float:
        r = grid[i]
        if r not in evaluated:
            evaluated[r] = edge_rate_bps(scenario_template, r, percentile_p, workers)
        return evaluated[r]

    best = None
    if SearchMethod(search) is SearchMethod.LINEAR:
        for i in range(len(grid)):
            if rate_at(i) >= target_rate_bps:
                best = i
    else:
        lo, hi = 0, len(grid) - 1
        while lo <= hi:
            mid = (lo + hi) // 2
            if rate_at(mid) >= target_rate_bps:
                best = mid
                lo = mid + 1
            else:
                hi = mid - 1
    if best is None:
        return RadiusSearch(False, None, max(evaluated.values()), evaluated)
    return RadiusSearch(True, grid[best], evaluated[grid[best]], evaluated)


@dataclass(frozen=True)
class SweepPoint:
    """One table column. Optional fields override the strand scaling rules.

    ``cell_radius_m`` and ``area_capacity_bps_per_km2`` inject known values
    instead of running the simulator.
    """

    frequency_hz: float
    bandwidth_hz: float | None = None
    antennas: int | None = None
    cell_radius_m: float | None = None
    area_capacity_bps_per_km2: float | None = None
    pathloss: PathLossParams | None = None


@dataclass(frozen=True)
class StrandStudy:
    template: Scenario
    points: tuple[SweepPoint, ...]
    antenna_base_hz: float = 10e9
    antenna_base_count: int = 4
    fixed_antennas: int = 32
    fixed_bandwidth_hz: float | None = None
    # strand-2 fallback when a point has no bandwidth: fraction of the carrier
    bandwidth_fraction: float | None = None
    target_rate_bps: float = 100e6
    percentile_p: float = 0.95
    radius_grid_m: tuple[float, ...] = (50.0, 100.0, 150.0, 200.0, 250.0)
    search: SearchMethod = SearchMethod.BINARY
    reference_radius_m: float | None = None
    enforce_capacity_window: bool = True
    cell_shape: CellShape = CellShape.HEX
    workers: int | None = None


class _Rejected(Exception):
    pass


def _row_scenario(study: StrandStudy, strand: Strand, point: SweepPoint) -> tuple[Scenario, int | None]:
    t = study.template
    f = point.frequency_hz
    antennas: int | None
    antenna: AntennaConfig = t.antenna
    if point.antennas is not None:
        antennas = point.antennas
    elif t.antenna.gain_model is GainModel.APERTURE:
        antennas = None
    elif strand is Strand.S1_FIXED_BW:
        if f < study.antenna_base_hz:
            raise _Rejected(
                f"below the antenna-count base frequency {study.antenna_base_hz / 1e9:g} GHz"
            )
        antennas = required_antenna_count(f, study.antenna_base_hz, study.antenna_base_count)
    else:
        antennas = study.fixed_antennas
    if antennas is not None:
        n_h, n_v = split_antenna_count(antennas)
        antenna = replace(t.antenna, n_h=n_h, n_v=n_v)

    if point.bandwidth_hz is not None:
        bw = point.bandwidth_hz
    elif strand is Strand.S1_FIXED_BW:
        bw = study.fixed_bandwidth_hz or t.carrier.bandwidth_hz
    elif study.bandwidth_fraction is not None:
        bw = study.bandwidth_fraction * f
    else:
        raise _Rejected("strand 2 needs a bandwidth for every frequency")

    try:
        carrier = replace(t.carrier, frequency_hz=f, bandwidth_hz=bw)
    except DomainError as exc:
        raise _Rejected(str(exc)) from exc
    scenario = replace(
        t,
        strand=strand,
        carrier=carrier,
        antenna=antenna,
        pathloss=point.pathloss or t.pathloss,
        cell_radius_m=point.cell_radius_m or t.cell_radius_m,
    )
    return scenario, antennas


def _check_frequency(kpi: Kpi, strand: Strand, study: StrandStudy, f: float):
    lo, hi = MM_WAVE_RANGE_HZ
    if not lo <= f <= hi:
        raise _Rejected("outside the 6-100 GHz range")
    if kpi is Kpi.CAPACITY and study.enforce_capacity_window:
        wlo, whi = CAPACITY_WINDOWS_HZ[strand]
        if not wlo <= f <= whi:
            raise _Rejected(
                f"outside the strand-{int(strand)} capacity window {wlo / 1e9:g}-{whi / 1e9:g} GHz"
            )


def evaluate_coverage_point(study: StrandStudy, scenario: Scenario, point: SweepPoint) -> tuple[float, float | None]:
    """Cell radius for one point and the edge rate it achieves (None if injected)."""
    if point.cell_radius_m is not None:
        return point.cell_radius_m, None
    found = coverage_min_radius(
        scenario,
        study.target_rate_bps,
        study.radius_grid_m,
        study.percentile_p,
        study.search,
        study.workers,
    )
    if not found.feasible:
        raise _Rejected(
            f"infeasible: best edge rate {found.edge_rate_bps / 1e6:.4g} Mbps "
            f"< target {study.target_rate_bps / 1e6:.4g} Mbps"
        )
    return found.radius_m, found.edge_rate_bps


def evaluate_capacity_point(study: StrandStudy, scenario: Scenario, point: SweepPoint) -> float:
    if point.area_capacity_bps_per_km2 is not None:
        return point.area_capacity_bps_per_km2
    cdf = run_scenario(scenario, workers=study.workers)
    density = cell_density_per_km2(scenario.cell_radius_m, study.cell_shape)
    return area_capacity(density, scenario.users_per_cell, cdf.mean())


def run_strand_table(kpi: Kpi | str, strand: Strand | int, study: StrandStudy) -> FomReport:
    """One FoM row per sweep point; the first accepted row is the reference."""
    kpi = Kpi(kpi)
    strand = Strand.parse(strand)
    report = FomReport(kpi=kpi.value, strand=int(strand))
    reference: float | None = study.reference_radius_m if kpi is Kpi.COVERAGE else None

    for point in study.points:
        f = point.frequency_hz
        try:
            _check_frequency(kpi, strand, study, f)
            scenario, antennas = _row_scenario(study, strand, point)
            if kpi is Kpi.COVERAGE:
                radius, rate = evaluate_coverage_point(study, scenario, point)
                if reference is None:
                    reference = radius
                result = CoverageResult(
                    f, radius, reference, cells_needed(reference, radius),
                    coverage_fom(cells_needed(reference, radius)), rate,
                )
                metric, normalized, fom = result.cells_needed, 1.0 / result.cells_needed, result.fom
            else:
                radius = scenario.cell_radius_m
                cap = evaluate_capacity_point(study, scenario, point)
                if reference is None:
                    if not cap > 0:
                        raise _Rejected("reference capacity must be positive")
                    reference = cap
                result = CapacityResult(f, cap, reference, capacity_fom(cap, reference))
                metric, normalized, fom = cap, cap / reference, result.fom
        except _Rejected as exc:
            report.rejected.append(RejectedRow(f / 1e9, str(exc)))
            continue
        report.rows.append(
            FomRow(
                kpi=kpi.value,
                strand=int(strand),
                frequency_ghz=f / 1e9,
                bandwidth_mhz=scenario.carrier.bandwidth_hz / 1e6,
                antennas=antennas,
                cell_radius_m=float(radius),
                metric_value=float(metric),
                normalized=float(normalized),
                fom=float(fom),
            )
        )
    return report
