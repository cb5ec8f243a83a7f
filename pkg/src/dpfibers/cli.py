"""Command-line entry point ``dpfibers``.

Exit codes: 0 on success, 1 when a classification disagrees with the
reference tables (or a property suite fails), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from dpfibers import goldens, suites
from dpfibers.arith import format_rational
from dpfibers.classifier import SearchBounds, classify, obstruction_notes
from dpfibers.goldens import diff_report, load_rows
from dpfibers.orbifold_rr import c_local
from dpfibers.render import FORMATS, render

USAGE_ERROR = 2


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _at_least_two(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"expected an integer >= 2, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dpfibers",
        description="Classify multiple fibers of terminal del Pezzo fibrations exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="baskets for one multiplicity")
    p.add_argument("--m", type=_positive, required=True, help="fiber multiplicity m_o")
    p.add_argument("--rmax", type=_at_least_two, default=12)
    p.add_argument("--nmax", type=_positive, default=8)
    p.add_argument("--no-anchor-filter", action="store_true")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument(
        "--golden", type=Path, help="compare against rows from this JSON file instead"
    )

    p = sub.add_parser("scan", help="solution counts over a range of multiplicities")
    p.add_argument("--from", dest="lo", type=_positive, required=True)
    p.add_argument("--to", dest="hi", type=_positive, required=True)
    p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=[*suites.SUITES, "all"], required=True)
    p.add_argument("--rmax", type=_at_least_two, default=60)

    p = sub.add_parser("tables", help="print the reference tables")
    p.add_argument("--which", type=int, choices=(1, 2), required=True)
    p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("clocal", help="exact local contribution c(r, b, q)")
    p.add_argument("-r", type=_positive, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    return parser


def cmd_classify(args: argparse.Namespace) -> int:
    bounds = SearchBounds(args.rmax, args.nmax, not args.no_anchor_filter)
    report = classify(args.m, bounds)
    if args.golden is not None:
        try:
            rows = load_rows(args.golden.read_text(encoding="utf-8"))
        except (OSError, ValueError, KeyError) as exc:
            print(f"dpfibers classify: error: cannot read golden rows: {exc}", file=sys.stderr)
            return USAGE_ERROR
        report = type(report)(
            report.m_o, report.bounds, report.groups, diff_report(report, rows), report.notes
        )
    print(render(report, args.format))
    return 1 if report.golden_status.kind == "mismatch" else 0


def cmd_scan(args: argparse.Namespace) -> int:
    if args.lo > args.hi:
        print(f"dpfibers scan: error: empty range {args.lo}..{args.hi}", file=sys.stderr)
        return USAGE_ERROR
    rows = []
    for m in range(args.lo, args.hi + 1):
        report = classify(m)
        rows.append(
            {
                "m_o": m,
                "solutions": len(report.solutions),
                "types": [list(g.indices) for g in report.groups],
                "golden_status": report.golden_status.kind,
            }
        )
    feasible = {row["m_o"] for row in rows if row["solutions"] and row["m_o"] <= 12}
    expected = set(range(args.lo, args.hi + 1)) & set(range(1, 7))

    if args.format == "json":
        print(json.dumps({"scan": rows, "feasible": sorted(feasible)}, indent=2))
    elif args.format == "md":
        print("| m_o | solutions | types | golden |")
        print("|---|---|---|---|")
        for row in rows:
            types = "; ".join(",".join(map(str, t)) or "empty" for t in row["types"]) or "-"
            print(f"| {row['m_o']} | {row['solutions']} | {types} | {row['golden_status']} |")
        print(f"\nfeasible: {sorted(feasible)}")
    else:
        for row in rows:
            types = " ".join("(" + ",".join(map(str, t)) + ")" for t in row["types"])
            print(f"m={row['m_o']:<3} solutions={row['solutions']:<3} {types}".rstrip())
            if not row["solutions"]:
                for note in obstruction_notes(row["m_o"]):
                    print(f"      {note}")
        print(f"feasible: {sorted(feasible)}")
    return 0 if feasible == expected else 1


def cmd_verify(args: argparse.Namespace) -> int:
    status = 0
    for result in suites.run(args.suite, args.rmax):
        verdict = "pass" if result.passed else "FAIL"
        print(f"{result.name}: {verdict} ({result.checked} checked, {result.failed} failed)")
        for line in result.info:
            print(f"  {line}")
        for line in result.failures:
            print(f"  counterexample: {line}")
        if not result.passed:
            status = 1
    return status


def cmd_tables(args: argparse.Namespace) -> int:
    if args.which == 1:
        out = {
            "json": goldens.table1_json,
            "md": goldens.table1_markdown,
            "text": goldens.table1_text,
        }[args.format]()
    else:
        out = {
            "json": goldens.table2_json,
            "md": goldens.table2_markdown,
            "text": goldens.table2_text,
        }[args.format]()
    print(out)
    return 0


def cmd_clocal(args: argparse.Namespace) -> int:
    try:
        value = c_local(args.r, args.b, args.q)
    except ValueError as exc:
        print(f"dpfibers clocal: error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    print(format_rational(value))
    return 0


COMMANDS = {
    "classify": cmd_classify,
    "scan": cmd_scan,
    "verify": cmd_verify,
    "tables": cmd_tables,
    "clocal": cmd_clocal,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
