"""Command-line interface.

Four subcommands with scriptable, deterministic output:

* ``analyze``      -- full invariant report for one weight system
* ``search``       -- enumerate and classify candidates up to a degree bound
* ``verify-table`` -- recompute every row of a catalog and diff it
* ``twins``        -- group catalog rows sharing (degree, mu, |H3|)

Exit codes: 0 success, 1 verification mismatch, 2 invalid input.  The
environment variable ``SINGLINK_EXPANSION_CAP`` (decimal integer) overrides
the polynomial expansion cap used by the Alexander-polynomial oracle.
"""

from __future__ import annotations

import argparse
import sys
from math import gcd
from pathlib import Path
from typing import Optional, Sequence

from .catalog import (
    TableFormatError,
    emit_reports,
    emit_verification,
    find_twins,
    load_table,
    parse_table,
    verify_table,
)
from .invariants import Candidate
from .search import SearchConfig, classify, run_search

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2


class CliError(Exception):
    """Invalid input; maps to exit code 2."""


def _parse_weights(text: str) -> tuple[int, ...]:
    try:
        weights = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise CliError(f"--weights must be comma-separated integers, got {text!r}")
    if len(weights) != 5:
        raise CliError(f"expected 5 weights, got {len(weights)}")
    if any(w < 1 for w in weights):
        raise CliError(f"weights must be positive, got {weights}")
    if gcd(*weights) != 1:
        raise CliError(f"weights {weights} have gcd {gcd(*weights)}; must be 1")
    return weights


def _load_rows(fixture: Optional[str]):
    if fixture is None:
        return load_table()
    try:
        text = Path(fixture).read_text("utf-8")
    except OSError as exc:
        raise CliError(f"cannot read fixture {fixture!r}: {exc}")
    try:
        return parse_table(text)
    except TableFormatError as exc:
        raise CliError(f"malformed fixture {fixture!r}: {exc}")


def _write_output(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, "utf-8")


def _cmd_analyze(args) -> int:
    weights = _parse_weights(args.weights)
    if list(weights) != sorted(weights):
        weights = tuple(sorted(weights))
        print(
            f"warning: weights were not nondecreasing; sorted to {weights}",
            file=sys.stderr,
        )
    degree = args.degree if args.degree is not None else sum(weights) - 1
    if degree < 1:
        raise CliError(f"degree must be positive, got {degree}")
    report = classify(Candidate(weights, degree))
    _write_output(emit_reports([report], args.format), None)
    return EXIT_OK


def _cmd_search(args) -> int:
    if args.max_degree < 1:
        raise CliError("--max-degree must be >= 1")
    if args.index < 1:
        raise CliError("--index must be >= 1")
    if args.jobs < 1:
        raise CliError("--jobs must be >= 1")
    cfg = SearchConfig(
        max_degree=args.max_degree,
        index=args.index,
        require_ke=args.require_ke,
        rhs_only=args.rhs_only,
        partitions=args.jobs,
    )
    reports = run_search(cfg)
    _write_output(emit_reports(reports, args.format), args.out)
    return EXIT_OK


def _cmd_verify_table(args) -> int:
    rows = _load_rows(args.fixture)
    verification = verify_table(rows)
    if args.format is not None:
        _write_output(emit_verification(verification, args.format), None)
    else:
        for check in verification.checks:
            row = check.row
            tag = "PASS" if check.passed else "FAIL"
            line = f"{tag} w={row.weights} d={row.degree}"
            if not check.passed:
                line += ": " + "; ".join(check.failures)
            print(line)
    if verification.total == 0:
        print("warning: empty fixture", file=sys.stderr)
    print(verification.summary())
    return EXIT_OK if verification.all_passed else EXIT_MISMATCH


def _cmd_twins(args) -> int:
    rows = _load_rows(args.fixture)
    for group in find_twins(rows):
        d, mu, h3 = group.key
        print(f"d={d} mu={mu} h3={h3}: {len(group.members)} members")
        for row in group.members:
            print(f"  w={row.weights}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singlink",
        description=(
            "Exact invariants of links of weighted homogeneous hypersurface "
            "singularities: Milnor numbers, monodromy divisors, Betti numbers, "
            "H3 torsion orders, and searches for rational homology 7-spheres."
        ),
        epilog=(
            "Environment: SINGLINK_EXPANSION_CAP overrides the Alexander-"
            "polynomial expansion cap (decimal integer, default 10000)."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="invariant report for one weight system")
    p.add_argument("--weights", required=True, metavar="w0,w1,w2,w3,w4")
    p.add_argument("--degree", type=int, default=None,
                   help="degree d (default: sum of weights - 1)")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("search", help="classify all candidates up to a degree bound")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--index", type=int, default=1)
    p.add_argument("--require-ke", action="store_true",
                   help="keep only candidates passing the KE sufficiency inequality")
    p.add_argument("--rhs-only", action="store_true",
                   help="keep only rational homology spheres (b3 == 0)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="write results to a file")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("verify-table", help="recompute and diff a catalog")
    p.add_argument("--fixture", default=None,
                   help="catalog CSV path (default: bundled 184-row catalog)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.set_defaults(func=_cmd_verify_table)

    p = sub.add_parser("twins", help="catalog rows sharing (d, mu, |H3|)")
    p.add_argument("--fixture", default=None,
                   help="catalog CSV path (default: bundled 184-row catalog)")
    p.set_defaults(func=_cmd_twins)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
