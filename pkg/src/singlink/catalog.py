"""The bundled catalog of rational homology 7-sphere links and its checks.

The package ships a CSV catalog (``data/table.csv``) of 184 weight systems,
each an index-1, well-formed, quasi-smooth hypersurface candidate in
weighted P^4 whose link is a rational homology 7-sphere satisfying the
Kaehler-Einstein sufficiency inequality.  Each row records the weights, the
degree, the Milnor number and the order of H_3 of the link.

:func:`verify_table` recomputes every invariant of every row from scratch
and reports field-level differences; it is the package's main end-to-end
self-check.  :func:`find_twins` groups rows that share (degree, mu, |H3|)
— distinct weight systems whose links are indistinguishable by these
invariants.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import gcd
from typing import Iterable, Optional, Sequence, Union

from .factorization import Factorization, factorize
from .invariants import Candidate, CoprimeShortcut, SplitShortcut
from .search import LinkReport, classify

__all__ = [
    "TableRow",
    "TwinGroup",
    "RowCheck",
    "TableVerification",
    "TableFormatError",
    "FIXTURE_HEADER",
    "parse_table",
    "emit_table",
    "load_table",
    "verify_table",
    "find_twins",
    "factorize",
    "Factorization",
    "report_to_dict",
    "emit_reports",
    "emit_verification",
]

FIXTURE_HEADER = ("w0", "w1", "w2", "w3", "w4", "d", "mu", "h3_order")


class TableFormatError(ValueError):
    """The catalog text is malformed; the message lists offending lines."""


@dataclass(frozen=True)
class TableRow:
    """One catalog entry: weights, degree, Milnor number, |H3| order."""

    weights: tuple[int, int, int, int, int]
    degree: int
    mu: int
    h3_order: int

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.degree, self.mu, self.h3_order)

    def candidate(self) -> Candidate:
        return Candidate(self.weights, self.degree)


@dataclass(frozen=True)
class TwinGroup:
    """Catalog rows sharing (degree, mu, |H3|); only groups of >= 2 matter."""

    key: tuple[int, int, int]
    members: tuple[TableRow, ...]


def parse_table(source: str) -> list[TableRow]:
    """Parse catalog CSV text into rows.

    The first line must be the exact header ``w0,w1,w2,w3,w4,d,mu,h3_order``;
    every following line carries eight positive decimal integers with
    nondecreasing weights of gcd 1 and sum(weights) == d + 1.  All malformed
    lines are collected and reported together, with line numbers.
    """
    problems: list[str] = []
    rows: list[TableRow] = []
    lines = source.splitlines()
    if not lines or tuple(f.strip() for f in lines[0].split(",")) != FIXTURE_HEADER:
        raise TableFormatError(
            f"line 1: expected header {','.join(FIXTURE_HEADER)!r}, "
            f"got {lines[0]!r}" if lines else "empty catalog: header line missing"
        )
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 8:
            problems.append(f"line {lineno}: expected 8 fields, got {len(fields)}")
            continue
        try:
            values = [int(f) for f in fields]
        except ValueError:
            problems.append(f"line {lineno}: non-integer field in {fields}")
            continue
        w = tuple(values[:5])
        d, mu, h3 = values[5:]
        if any(x < 1 for x in values):
            problems.append(f"line {lineno}: all fields must be positive")
            continue
        if list(w) != sorted(w):
            problems.append(f"line {lineno}: weights {w} are not nondecreasing")
            continue
        if gcd(*w) != 1:
            problems.append(f"line {lineno}: weights {w} have gcd {gcd(*w)}")
            continue
        if sum(w) - d != 1:
            problems.append(
                f"line {lineno}: index sum(w) - d = {sum(w) - d}, expected 1"
            )
            continue
        rows.append(TableRow(weights=w, degree=d, mu=mu, h3_order=h3))
    if problems:
        raise TableFormatError("; ".join(problems))
    return rows


def emit_table(rows: Iterable[TableRow]) -> str:
    """Serialize rows in the catalog CSV schema (inverse of parse_table)."""
    lines = [",".join(FIXTURE_HEADER)]
    for r in rows:
        lines.append(",".join(map(str, [*r.weights, r.degree, r.mu, r.h3_order])))
    return "\n".join(lines) + "\n"


def load_table() -> list[TableRow]:
    """The catalog shipped with the package."""
    text = resources.files("singlink").joinpath("data/table.csv").read_text("utf-8")
    return parse_table(text)


# -- verification -------------------------------------------------------------


@dataclass(frozen=True)
class RowCheck:
    """Result of recomputing one catalog row."""

    row: TableRow
    report: Optional[LinkReport]
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class TableVerification:
    checks: tuple[RowCheck, ...]

    @property
    def total(self) -> int:
        return len(self.checks)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def all_passed(self) -> bool:
        return self.passed == self.total

    @property
    def failed_checks(self) -> tuple[RowCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def summary(self) -> str:
        return f"{self.passed}/{self.total} pass"


def check_row(row: TableRow) -> RowCheck:
    """Recompute every invariant of one row and diff against its fields."""
    failures: list[str] = []
    try:
        report = classify(row.candidate())
    except ValueError as exc:
        return RowCheck(row=row, report=None, failures=(f"invalid candidate: {exc}",))
    if report.index != 1:
        failures.append(f"index: computed {report.index}, expected 1")
    if not report.well_formed:
        failures.append("well_formed: computed False")
    qs = report.quasi_smooth
    for name, ok in (("I", qs.condition_i), ("II", qs.condition_ii), ("III", qs.condition_iii)):
        if not ok:
            failures.append(f"quasi_smooth condition {name}: computed False")
    if report.b3 != 0:
        failures.append(f"b3: computed {report.b3}, expected 0")
    if report.milnor_number != row.mu:
        failures.append(f"mu: computed {report.milnor_number}, catalog {row.mu}")
    if report.torsion_order != row.h3_order:
        failures.append(
            f"h3_order: computed {report.torsion_order}, catalog {row.h3_order}"
        )
    if not report.ke_sufficient:
        failures.append("ke_sufficient: inequality fails")
    return RowCheck(row=row, report=report, failures=tuple(failures))


def verify_table(rows: Sequence[TableRow]) -> TableVerification:
    """Recompute all rows; mismatches become report content, not exceptions."""
    return TableVerification(checks=tuple(check_row(r) for r in rows))


# -- twins --------------------------------------------------------------------


def find_twins(rows: Sequence[TableRow]) -> list[TwinGroup]:
    """Group rows by (degree, mu, |H3|) and keep groups of size >= 2."""
    groups: dict[tuple[int, int, int], list[TableRow]] = {}
    for r in rows:
        groups.setdefault(r.key, []).append(r)
    twins = [
        TwinGroup(key=k, members=tuple(sorted(g, key=lambda r: r.weights)))
        for k, g in groups.items()
        if len(g) >= 2
    ]
    twins.sort(key=lambda t: t.key)
    return twins


# -- serialization ------------------------------------------------------------


def _fraction_str(x: Union[int, Fraction]) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return str(int(x))


def _shortcut_dict(report: LinkReport) -> dict:
    s = report.shortcut
    if isinstance(s, CoprimeShortcut):
        return {
            "kind": "lemma34",
            "N": _fraction_str(s.N),
            "r01": _fraction_str(s.r01),
            "r23": _fraction_str(s.r23),
        }
    if isinstance(s, SplitShortcut):
        return {
            "kind": "lemma312",
            "m3": s.m3,
            "m2": s.m2,
            "triple_denominators": list(s.triple_denominators),
            "pair_denominators": list(s.pair_denominators),
            "l": _fraction_str(s.l),
            "n": _fraction_str(s.n),
        }
    return {"kind": "general"}


def report_to_dict(report: LinkReport) -> dict:
    """The JSON form of a LinkReport.

    Unbounded integers (mu, |H3|, shortcut parameters) are decimal strings
    so consumers never round them through a float.
    """
    qs = report.quasi_smooth
    return {
        "weights": list(report.weights),
        "degree": report.degree,
        "index": report.index,
        "well_formed": report.well_formed,
        "quasi_smooth": {
            "c1": qs.condition_i,
            "c2": qs.condition_ii,
            "c3": qs.condition_iii,
        },
        "milnor_number": _fraction_str(report.milnor_number),
        "divisor": (
            None
            if report.divisor is None
            else [
                {"period": p, "coeff": int(c)} for p, c in report.divisor.items()
            ]
        ),
        "b3": report.b3,
        "h3_order": None if report.torsion_order is None else str(report.torsion_order),
        "h3_factored": (
            None
            if report.torsion_factored is None
            else [[p, e] for p, e in report.torsion_factored.factors]
        ),
        "ke_sufficient": report.ke_sufficient,
        "shortcut": _shortcut_dict(report),
    }


_REPORT_CSV_COLUMNS = (
    "w0", "w1", "w2", "w3", "w4", "d", "index", "well_formed",
    "qs1", "qs2", "qs3", "mu", "b3", "h3_order", "h3_factored",
    "ke_sufficient", "shortcut",
)


def emit_reports(reports: Sequence[LinkReport], format: str = "json") -> str:
    """Serialize LinkReports deterministically as ``json`` or ``csv``."""
    if format == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(_REPORT_CSV_COLUMNS)
        for r in reports:
            qs = r.quasi_smooth
            writer.writerow(
                [
                    *r.weights,
                    r.degree,
                    r.index,
                    r.well_formed,
                    qs.condition_i,
                    qs.condition_ii,
                    qs.condition_iii,
                    _fraction_str(r.milnor_number),
                    "" if r.b3 is None else r.b3,
                    "" if r.torsion_order is None else r.torsion_order,
                    "" if r.torsion_factored is None else str(r.torsion_factored),
                    r.ke_sufficient,
                    r.shortcut_kind,
                ]
            )
        return buf.getvalue()
    raise ValueError(f"unsupported format {format!r}: expected 'csv' or 'json'")


def emit_verification(verification: TableVerification, format: str = "json") -> str:
    """Serialize a verification outcome as ``json`` or ``csv``."""
    if format == "json":
        payload = {
            "total": verification.total,
            "passed": verification.passed,
            "all_passed": verification.all_passed,
            "rows": [
                {
                    "weights": list(c.row.weights),
                    "degree": c.row.degree,
                    "passed": c.passed,
                    "failures": list(c.failures),
                }
                for c in verification.checks
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    if format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["w0", "w1", "w2", "w3", "w4", "d", "passed", "failures"])
        for c in verification.checks:
            writer.writerow(
                [*c.row.weights, c.row.degree, c.passed, "; ".join(c.failures)]
            )
        return buf.getvalue()
    raise ValueError(f"unsupported format {format!r}: expected 'csv' or 'json'")
