"""
Report serialization.

Reports become plain dicts tagged with a "type" field. Exact rationals are
"p/q" strings with a companion ``*_float`` field; Weyl values are rendered
at 15 significant digits so repeated runs give identical bytes.

A JSON document is {"command": ..., "spec": "m,n", "report": {...}} or
the same with "reports": [...]. CSV output flattens each report dict into
one row.
"""

import csv
import io
import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple, Union

from .errors import ParseError
from .functions import format_polynomial, parse_polynomial, to_polynomial
from .types import (
    Collection,
    DiscrepancyMode,
    DiscrepancyReport,
    Explicit,
    FrequencyReport,
    GridBox,
    HorizonRow,
    SuffixCondition,
    SweepRow,
    UnitPoint,
    WeylSumResult,
    WitnessParams,
    WitnessReport,
    WitnessTranscriptEntry,
)

Target = Union[str, Path, TextIO]


def fraction_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text!r}") from None


def render_float(x: float) -> float:
    """x rounded to 15 significant digits."""
    return float(f"{x:.15g}")


def _exact(prefix: str, f: Fraction) -> Dict[str, Any]:
    return {prefix: fraction_str(f), f"{prefix}_float": render_float(float(f))}


def _suffix_dict(cond: Optional[SuffixCondition]):
    return None if cond is None else {"d": cond.d, "beta": cond.beta}


def _suffix_from(d) -> Optional[SuffixCondition]:
    return None if d is None else SuffixCondition(d["d"], d["beta"])


def report_to_dict(report) -> Dict[str, Any]:
    """Serialize any report type; raises TypeError for unknown objects."""
    if isinstance(report, FrequencyReport):
        return {
            "type": "frequency",
            "box": {"k": report.box.k, "a": list(report.box.a)},
            "hits": report.hits,
            "total": report.total,
            **_exact("frequency", report.frequency),
            **_exact("target", report.target),
            **_exact("deviation", report.deviation),
        }
    if isinstance(report, WeylSumResult):
        return {
            "type": "weyl",
            "h": list(report.h),
            "count": report.count,
            "real": render_float(report.value.real),
            "imag": render_float(report.value.imag),
            "magnitude": render_float(report.magnitude),
            "error_budget": render_float(report.error_budget),
        }
    if isinstance(report, DiscrepancyReport):
        return {
            "type": "discrepancy",
            "mode": str(report.mode),
            **_exact("value", report.value),
            "points": report.points,
            "box": {
                "lower": [fraction_str(v) for v in report.lower],
                "upper": [fraction_str(v) for v in report.upper],
            },
        }
    if isinstance(report, SweepRow):
        return {
            "type": "sweep_row",
            "n": report.n,
            **_exact("max_dev", report.max_deviation),
            **_exact("disc", report.discrepancy),
            "total": report.total,
        }
    if isinstance(report, HorizonRow):
        return {
            "type": "horizon_row",
            "N": report.N,
            "passing": report.passing,
            "total": report.total,
            **_exact("fraction", report.fraction),
        }
    if isinstance(report, WitnessReport):
        p = report.params
        return {
            "type": "witness",
            "params": {"m": p.m, "s": p.s, "K": p.K, "N": p.N, "n": p.n},
            "suffix": _suffix_dict(report.suffix),
            "admissible_count": report.admissible_count,
            "expected_count": report.expected_count,
            "passing_x": report.passing_x,
            "checks": report.checks,
            "hits": report.hits,
            "bijective_z": report.bijective_z,
            **_exact("pass_rate", report.pass_rate),
            "transcript": [
                {"z": str(e.z), "ell": e.ell, "b": list(e.b), "c": list(e.c), "y": str(e.y), "hit": e.hit}
                for e in report.transcript
            ],
        }
    if isinstance(report, Collection):
        return {
            "type": "collection",
            "entries": [format_polynomial(to_polynomial(e)) for e in report.entries],
        }
    if isinstance(report, UnitPoint):
        return {
            "type": "unit_point",
            "m": report.base,
            "n": report.exponent,
            "value": f"{report.numerator}/{report.denominator}",
            "value_float": render_float(float(report)),
        }
    raise TypeError(f"cannot serialize {type(report).__name__}")


def _mode_from(text: str) -> DiscrepancyMode:
    if text == "exact":
        return DiscrepancyMode.exact()
    if text.startswith("grid(") and text.endswith(")"):
        return DiscrepancyMode.grid(int(text[5:-1]))
    raise ParseError(f"bad discrepancy mode {text!r}")


def report_from_dict(d: Dict[str, Any]):
    """Inverse of ``report_to_dict``."""
    kind = d.get("type")
    try:
        if kind == "frequency":
            return FrequencyReport(
                box=GridBox(d["box"]["k"], tuple(d["box"]["a"])),
                hits=d["hits"],
                total=d["total"],
                target=parse_fraction(d["target"]),
            )
        if kind == "weyl":
            return WeylSumResult(
                h=tuple(d["h"]),
                value=complex(d["real"], d["imag"]),
                count=d["count"],
                error_budget=d["error_budget"],
            )
        if kind == "discrepancy":
            return DiscrepancyReport(
                mode=_mode_from(d["mode"]),
                value=parse_fraction(d["value"]),
                lower=tuple(parse_fraction(v) for v in d["box"]["lower"]),
                upper=tuple(parse_fraction(v) for v in d["box"]["upper"]),
                points=d["points"],
            )
        if kind == "sweep_row":
            return SweepRow(
                n=d["n"],
                max_deviation=parse_fraction(d["max_dev"]),
                discrepancy=parse_fraction(d["disc"]),
                total=d["total"],
            )
        if kind == "horizon_row":
            return HorizonRow(N=d["N"], passing=d["passing"], total=d["total"])
        if kind == "witness":
            return WitnessReport(
                params=WitnessParams(**d["params"]),
                suffix=_suffix_from(d["suffix"]),
                admissible_count=d["admissible_count"],
                expected_count=d["expected_count"],
                passing_x=d["passing_x"],
                checks=d["checks"],
                hits=d["hits"],
                bijective_z=d["bijective_z"],
                transcript=[
                    WitnessTranscriptEntry(
                        z=int(e["z"]), ell=e["ell"], b=tuple(e["b"]), c=tuple(e["c"]),
                        y=int(e["y"]), hit=e["hit"],
                    )
                    for e in d["transcript"]
                ],
            )
        if kind == "collection":
            return Collection(tuple(Explicit(parse_polynomial(e)) for e in d["entries"]))
        if kind == "unit_point":
            num = parse_fraction(d["value"]) * d["m"] ** d["n"]
            return UnitPoint(int(num), d["m"], d["n"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed {kind} report: {exc}") from None
    raise ParseError(f"unknown report type {kind!r}")


def make_document(command: str, spec_header: Optional[str], payload, **meta) -> Dict[str, Any]:
    """Wrap one report or a list of reports into an output document."""
    doc: Dict[str, Any] = {"command": command}
    if spec_header is not None:
        doc["spec"] = spec_header
    doc.update(meta)
    if isinstance(payload, list):
        doc["reports"] = [report_to_dict(r) for r in payload]
    else:
        doc["report"] = report_to_dict(payload)
    return doc


def read_json_report(text: str):
    """Parse an emitted JSON document back into its report(s)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if "report" in doc:
        return report_from_dict(doc["report"])
    if "reports" in doc:
        return [report_from_dict(r) for r in doc["reports"]]
    raise ParseError("document holds no report")


# =============================================================================
# Writers
# =============================================================================

def _open(target: Target):
    if isinstance(target, (str, Path)):
        path = Path(target)
        path.parent.mkdir(parents=True, exist_ok=True)
        return open(path, "w", newline="", encoding="utf-8"), True
    return target, False


def write_json(target: Target, payload: Dict[str, Any]) -> None:
    """Write one UTF-8 JSON document, indent 2, keys in insertion order."""
    f, owned = _open(target)
    try:
        f.write(json.dumps(payload, indent=2, ensure_ascii=False))
        f.write("\n")
    finally:
        if owned:
            f.close()


def write_csv(target: Target, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """Write an RFC-4180 CSV table with CRLF line endings."""
    f, owned = _open(target)
    try:
        writer = csv.writer(f, lineterminator="\r\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(row)
    finally:
        if owned:
            f.close()


def flatten(d: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    """
    One CSV row from a report dict.

    Nested dicts get prefixed keys, scalar lists are space-joined, lists of
    records (the witness transcript) are left out.
    """
    out: Dict[str, Any] = {}
    for key, value in d.items():
        name = f"{prefix}{key}"
        if key == "type":
            continue
        if isinstance(value, dict):
            out.update(flatten(value, f"{name}_"))
        elif isinstance(value, list):
            if value and isinstance(value[0], dict):
                continue
            out[name] = " ".join(str(v) for v in value)
        elif value is None:
            out[name] = ""
        else:
            out[name] = value
    return out


def report_table(reports: Sequence[Any]) -> Tuple[List[str], List[List[Any]]]:
    """Header and rows for a homogeneous list of reports."""
    flat = [flatten(report_to_dict(r)) for r in reports]
    if not flat:
        return [], []
    header = list(flat[0])
    return header, [[row.get(col, "") for col in header] for row in flat]


def point_table(m: int, n: int, pairs: Iterable[Tuple[int, Sequence[int]]], s: int):
    """
    Header and rows for a point stream.

    Columns: x as a decimal string, coord_1 .. coord_s as exact
    "numerator/m^n" strings, then coord_1_float .. coord_s_float.
    """
    modulus = m ** n
    header = ["x"] + [f"coord_{i}" for i in range(1, s + 1)] + [f"coord_{i}_float" for i in range(1, s + 1)]

    def rows():
        for x, coords in pairs:
            yield (
                [str(x)]
                + [f"{v}/{modulus}" for v in coords]
                + [render_float(v / modulus) for v in coords]
            )

    return header, rows()


def to_text(writer, *args) -> str:
    """Run a writer against an in-memory buffer and return the text."""
    buf = io.StringIO(newline="")
    writer(buf, *args)
    return buf.getvalue()
