"""
Tests for report serialization and the JSON/CSV writers.
"""

import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from pcg_uniformity.errors import ParseError
from pcg_uniformity.functions import build_collection, to_polynomial
from pcg_uniformity.report_io import (
    flatten,
    fraction_str,
    make_document,
    point_table,
    read_json_report,
    render_float,
    report_from_dict,
    report_table,
    report_to_dict,
    to_text,
    write_csv,
    write_json,
)
from pcg_uniformity.types import (
    DiscrepancyMode,
    DiscrepancyReport,
    FrequencyReport,
    GridBox,
    HorizonRow,
    IntPolynomial,
    SuffixCondition,
    SweepRow,
    UnitPoint,
    WeylSumResult,
    WitnessParams,
    WitnessReport,
    WitnessTranscriptEntry,
)


def frequency_report():
    return FrequencyReport(GridBox(2, (1, 3)), hits=5, total=64, target=Fraction(1, 16))


def witness_report():
    return WitnessReport(
        params=WitnessParams(m=2, s=2, K=1, N=4, n=8),
        suffix=SuffixCondition(1, 1),
        admissible_count=32,
        expected_count=32,
        passing_x=8,
        checks=128,
        hits=128,
        bijective_z=32,
        transcript=[WitnessTranscriptEntry(z=1, ell=2, b=(1, 0), c=(1, 0), y=129, hit=True)],
    )


def json_round_trip(report):
    doc = make_document("test", "2,8", report)
    return read_json_report(json.dumps(doc))


class TestRoundTrip:
    """Reports survive report_to_dict and JSON."""

    @pytest.mark.parametrize("factory", [
        frequency_report,
        witness_report,
        lambda: DiscrepancyReport(DiscrepancyMode.grid(3), Fraction(3, 8),
                                  (Fraction(0), Fraction(1, 8)), (Fraction(1, 2), Fraction(1)), 64),
        lambda: DiscrepancyReport(DiscrepancyMode.exact(), Fraction(0), (Fraction(0),), (Fraction(1),), 2),
        lambda: SweepRow(n=9, max_deviation=Fraction(1, 512), discrepancy=Fraction(3, 1024), total=512),
        lambda: HorizonRow(N=5, passing=30, total=32),
        lambda: WeylSumResult(h=(1, -2), value=complex(0.5, -0.25), count=256, error_budget=0.0),
        lambda: UnitPoint(5, 3, 4),
    ])
    def test_round_trip(self, factory):
        report = factory()
        assert json_round_trip(report) == report

    def test_collection_round_trip_as_explicit(self):
        c = build_collection("iterations", s=3, base=IntPolynomial((1, 1, 1)))
        back = json_round_trip(c)
        assert [to_polynomial(e) for e in back] == [to_polynomial(e) for e in c]

    def test_list_document(self):
        rows = [HorizonRow(N=n, passing=1, total=2 ** n) for n in (2, 3)]
        doc = make_document("horizon", None, rows, collection="x")
        assert list(doc) == ["command", "collection", "reports"]
        assert read_json_report(json.dumps(doc)) == rows

    def test_unknown_type(self):
        with pytest.raises(ParseError):
            report_from_dict({"type": "nope"})

    def test_malformed(self):
        with pytest.raises(ParseError):
            report_from_dict({"type": "sweep_row", "n": 3})

    def test_bad_json(self):
        with pytest.raises(ParseError):
            read_json_report("{not json")

    def test_serialize_unknown_object(self):
        with pytest.raises(TypeError):
            report_to_dict(object())


class TestRendering:
    """Exact and float renderings."""

    def test_fraction_fields(self):
        d = report_to_dict(frequency_report())
        assert d["frequency"] == "5/64"
        assert d["frequency_float"] == 5 / 64
        assert d["deviation"] == "1/64"

    def test_fraction_str_keeps_denominator_one(self):
        assert fraction_str(Fraction(0)) == "0/1"

    def test_render_float_fifteen_digits(self):
        assert render_float(0.1 + 0.2) == 0.3
        assert render_float(1 / 3) == float("0.333333333333333")

    def test_big_integers_as_strings(self):
        entry = report_to_dict(witness_report())["transcript"][0]
        assert entry["z"] == "1" and entry["y"] == "129"


class TestWriters:
    """JSON and CSV output."""

    def test_json_layout(self, tmp_path):
        target = tmp_path / "out" / "report.json"
        write_json(target, make_document("cubefreq", "2,8", frequency_report()))
        text = target.read_text(encoding="utf-8")
        assert text.endswith("}\n")
        assert text.startswith('{\n  "command": "cubefreq",\n  "spec": "2,8",')

    def test_csv_crlf(self):
        text = to_text(write_csv, ["a", "b"], [[1, "x,y"], [2, "z"]])
        assert text == 'a,b\r\n1,"x,y"\r\n2,z\r\n'

    def test_flatten(self):
        flat = flatten(report_to_dict(witness_report()))
        assert "type" not in flat
        assert flat["params_m"] == 2
        assert flat["suffix_d"] == 1
        assert "transcript" not in flat

    def test_flatten_lists_and_none(self):
        flat = flatten({"type": "x", "h": [1, -2], "suffix": None})
        assert flat == {"h": "1 -2", "suffix": ""}

    def test_report_table(self):
        rows = [SweepRow(n, Fraction(0), Fraction(1, 2 ** n), 2 ** n) for n in (3, 4)]
        header, body = report_table(rows)
        assert header[:3] == ["n", "max_dev", "max_dev_float"]
        assert [r[0] for r in body] == [3, 4]

    def test_report_table_empty(self):
        assert report_table([]) == ([], [])

    def test_point_table(self):
        header, rows = point_table(2, 3, [(3, (3, 1))], 2)
        assert header == ["x", "coord_1", "coord_2", "coord_1_float", "coord_2_float"]
        assert list(rows) == [["3", "3/8", "1/8", 0.375, 0.125]]
