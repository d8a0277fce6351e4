"""FomReport: per-frequency figure-of-merit rows and their CSV/JSON/text forms."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

CSV_COLUMNS = (
    "kpi",
    "strand",
    "frequency_ghz",
    "bandwidth_mhz",
    "antennas",
    "cell_radius_m",
    "metric_value",
    "normalized",
    "fom",
)

_INT_COLUMNS = {"strand", "antennas"}
_STR_COLUMNS = {"kpi"}


@dataclass(frozen=True)
class FomRow:
    """One column of the transposed FoM table.

    ``metric_value`` is the KPI's raw quantity: cells needed for coverage,
    area capacity in bit/s/km^2 for capacity, the unclamped mark for mobility.
    """

    kpi: str
    strand: int
    frequency_ghz: float
    bandwidth_mhz: float | None
    antennas: int | None
    cell_radius_m: float | None
    metric_value: float
    normalized: float
    fom: float


@dataclass(frozen=True)
class RejectedRow:
    frequency_ghz: float
    reason: str


@dataclass
class FomReport:
    kpi: str
    strand: int
    rows: list[FomRow] = field(default_factory=list)
    rejected: list[RejectedRow] = field(default_factory=list)

    def foms(self) -> list[float]:
        return [r.fom for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in self.rows:
            writer.writerow(["" if v is None else _fmt(v) for v in astuple_ordered(row)])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "kpi": self.kpi,
            "strand": self.strand,
            "rows": [asdict(r) for r in self.rows],
            "rejected": [asdict(r) for r in self.rejected],
        }
        return json.dumps(doc, indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> FomReport:
        reader = csv.DictReader(io.StringIO(text))
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        rows = [FomRow(**{k: _parse(k, rec[k]) for k in CSV_COLUMNS}) for rec in reader]
        if not rows:
            raise ValueError("CSV report has no rows")
        return cls(kpi=rows[0].kpi, strand=rows[0].strand, rows=rows)

    @classmethod
    def from_json(cls, text: str) -> FomReport:
        doc = json.loads(text)
        return cls(
            kpi=doc["kpi"],
            strand=doc["strand"],
            rows=[FomRow(**r) for r in doc["rows"]],
            rejected=[RejectedRow(**r) for r in doc.get("rejected", [])],
        )

    def to_table(self) -> str:
        return format_table(self)


def astuple_ordered(row: FomRow) -> tuple:
    return tuple(getattr(row, name) for name in CSV_COLUMNS)


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _parse(name: str, text: str):
    if text == "":
        return None
    if name in _STR_COLUMNS:
        return text
    if name in _INT_COLUMNS:
        return int(text)
    return float(text)


_TITLES = {
    "coverage": "Coverage KPI analysis",
    "capacity": "Capacity KPI analysis",
    "mobility": "Mobility KPI analysis",
}


def _num(v, digits: int = 4) -> str:
    if v is None:
        return "-"
    if isinstance(v, int):
        return str(v)
    if math.isfinite(v) and float(v).is_integer():
        return str(int(v))
    return f"{v:.{digits}g}"


def format_table(report: FomReport) -> str:
    """Transposed text table, one column per frequency."""
    rows = report.rows
    ref = rows[0].frequency_ghz if rows else None
    freq_cells = [
        _num(r.frequency_ghz) + (" (ref)" if r.frequency_ghz == ref else "") for r in rows
    ]
    lines: list[tuple[str, list[str]]] = [("Carrier frq (GHz)", freq_cells)]
    if report.kpi != "mobility":
        if any(r.antennas is not None for r in rows):
            lines.append(("No of Antennas", [_num(r.antennas) for r in rows]))
        lines.append(("BW (MHz)", [_num(r.bandwidth_mhz) for r in rows]))
        lines.append(("Cell radius (m)", [_num(r.cell_radius_m) for r in rows]))
    if report.kpi == "coverage":
        lines.append(("Coverage - No. of cells (R_ref/R)^2", [_num(r.metric_value, 3) for r in rows]))
    elif report.kpi == "capacity":
        lines.append(("Area capacity (Gbps/km^2)", [_num(r.metric_value / 1e9, 3) for r in rows]))
        lines.append(("Normalized to f_ref", [f"{r.normalized:.2f}" for r in rows]))
    lines.append(("Figure of Merit", [_num(round(r.fom, 4)) for r in rows]))

    label_w = max(len(label) for label, _ in lines)
    col_w = max([len(c) for _, cells in lines for c in cells] + [6])
    title = f"{_TITLES.get(report.kpi, report.kpi)} - Strand {report.strand}"
    out = [title]
    for label, cells in lines:
        out.append(label.ljust(label_w) + "  " + "  ".join(c.rjust(col_w) for c in cells))
    for rej in report.rejected:
        out.append(f"rejected {_num(rej.frequency_ghz)} GHz: {rej.reason}")
    return "\n".join(out) + "\n"
