"""Analytical mobility figure of merit.

The mark falls linearly in log10(f / f_ref):

    mark = mark_ref - m_eff * log10(f / f_ref)

with m_eff = 2*m_ta + m_d + m_coh when the antenna count grows with frequency
(strand 1) and m_eff = m_d + m_coh when it is fixed (strand 2). The 2 comes
from beam tracking being quadratic in frequency.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from mmkpi.constants import SPEED_OF_LIGHT
from mmkpi.errors import DomainError
from mmkpi.report import FomReport, FomRow
from mmkpi.strand import Strand

MARK_RANGE = (0.0, 10.0)


@dataclass(frozen=True)
class MobilityCoefficients:
    m_ta: float = 2.0
    m_d: float = 1.0
    m_coh: float = 1.0
    mark_ref: float = 10.0
    f_ref_hz: float = 6e9

    def __post_init__(self):
        for name in ("m_ta", "m_d", "m_coh"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be >= 0")
        if not 0 < self.mark_ref <= 10:
            raise DomainError("mark_ref must lie in (0, 10]")
        if not self.f_ref_hz > 0:
            raise DomainError("f_ref_hz must be positive")


def tracking_effectiveness_ratio(f_max_hz: float, f_min_hz: float) -> float:
    """How much narrower the beam footprint gets: (f_max / f_min)^2."""
    _check_pair(f_max_hz, f_min_hz)
    return (f_max_hz / f_min_hz) ** 2


def doppler_spread_hz(f_c_hz: float, speed_mps: float) -> float:
    if not f_c_hz > 0 or speed_mps < 0:
        raise DomainError("carrier must be positive and speed non-negative")
    return f_c_hz * speed_mps / SPEED_OF_LIGHT


def coherence_time_ratio(f_max_hz: float, f_min_hz: float) -> float:
    """Factor by which coherence time shrinks going from f_min to f_max."""
    _check_pair(f_max_hz, f_min_hz)
    return f_max_hz / f_min_hz


def _check_pair(f_max_hz: float, f_min_hz: float):
    if not f_min_hz > 0 or f_max_hz < f_min_hz:
        raise DomainError("need f_max >= f_min > 0")


def slope_contributions(coeffs: MobilityCoefficients, strand: Strand | int) -> dict[str, float]:
    """Per-effect log10 slopes; they sum to the effective slope m_eff."""
    strand = Strand.parse(strand)
    tracking = 2.0 * coeffs.m_ta if strand is Strand.S1_FIXED_BW else 0.0
    return {"tracking": tracking, "doppler": coeffs.m_d, "coherence": coeffs.m_coh}


def effective_slope(coeffs: MobilityCoefficients, strand: Strand | int) -> float:
    return sum(slope_contributions(coeffs, strand).values())


def raw_mark(f_hz: float, coeffs: MobilityCoefficients, strand: Strand | int) -> float:
    if not f_hz > 0:
        raise DomainError("frequency must be positive")
    return coeffs.mark_ref - effective_slope(coeffs, strand) * math.log10(f_hz / coeffs.f_ref_hz)


def mobility_mark(f_hz: float, coeffs: MobilityCoefficients | None = None, strand: Strand | int = 1) -> float:
    """Mobility FoM clamped to [0, 10].

    >>> round(mobility_mark(28e9, MobilityCoefficients(), 1), 2)
    5.99
    """
    coeffs = coeffs or MobilityCoefficients()
    lo, hi = MARK_RANGE
    return min(hi, max(lo, raw_mark(f_hz, coeffs, strand)))


def mobility_report(
    frequencies_hz, coeffs: MobilityCoefficients | None = None, strand: Strand | int = 1
) -> FomReport:
    coeffs = coeffs or MobilityCoefficients()
    strand = Strand.parse(strand)
    report = FomReport(kpi="mobility", strand=int(strand))
    for f in frequencies_hz:
        f = float(f)
        mark = raw_mark(f, coeffs, strand)
        report.rows.append(
            FomRow(
                kpi="mobility",
                strand=int(strand),
                frequency_ghz=f / 1e9,
                bandwidth_mhz=None,
                antennas=None,
                cell_radius_m=None,
                metric_value=mark,
                normalized=mark / coeffs.mark_ref,
                fom=mobility_mark(f, coeffs, strand),
            )
        )
    return report
