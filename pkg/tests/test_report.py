import math

from hypothesis import given
from hypothesis import strategies as st

from mmkpi.report import CSV_COLUMNS, FomReport, FomRow, RejectedRow

finite = st.floats(allow_nan=False, allow_infinity=False, min_value=-1e15, max_value=1e15)
maybe = st.one_of(st.none(), finite)
rows = st.builds(
    FomRow,
    kpi=st.sampled_from(["coverage", "capacity", "mobility"]),
    strand=st.sampled_from([1, 2]),
    frequency_ghz=st.floats(6, 100),
    bandwidth_mhz=maybe,
    antennas=st.one_of(st.none(), st.sampled_from([1, 4, 32, 256])),
    cell_radius_m=maybe,
    metric_value=finite,
    normalized=finite,
    fom=st.floats(0, 10),
)


def test_csv_header_is_fixed():
    rep = FomReport("mobility", 1, [FomRow("mobility", 1, 6.0, None, None, None, 10.0, 1.0, 10.0)])
    assert rep.to_csv().splitlines()[0] == ",".join(CSV_COLUMNS)


@given(st.lists(rows, min_size=1, max_size=8))
def test_csv_round_trip(rs):
    rep = FomReport(rs[0].kpi, rs[0].strand, rs)
    back = FomReport.from_csv(rep.to_csv())
    assert back.rows == rep.rows


@given(st.lists(rows, min_size=1, max_size=8))
def test_json_round_trip(rs):
    rep = FomReport(rs[0].kpi, rs[0].strand, rs, [RejectedRow(120.0, "out of range")])
    back = FomReport.from_json(rep.to_json())
    assert back == rep


def test_table_row_labels():
    rep = FomReport("coverage", 2, [
        FomRow("coverage", 2, 6.0, 400.0, 32, 200.0, 1.0, 1.0, 10.0),
        FomRow("coverage", 2, 73.0, 1400.0, 32, 50.0, 16.0, 1 / 16, 0.625),
    ])
    text = rep.to_table()
    for label in ("Carrier frq (GHz)", "No of Antennas", "BW (MHz)", "Cell radius (m)",
                  "Coverage - No. of cells (R_ref/R)^2", "Figure of Merit"):
        assert label in text
    assert "0.625" in text and "6 (ref)" in text


def test_capacity_table_in_gbps():
    rep = FomReport("capacity", 1, [FomRow("capacity", 1, 6.0, 500.0, None, 173.2, 297e9, 1.0, 10.0)])
    text = rep.to_table()
    assert "Area capacity (Gbps/km^2)" in text and "297" in text
    assert not math.isnan(rep.rows[0].metric_value)
