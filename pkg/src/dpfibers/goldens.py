"""Reference classification of multiple fibers, stored as data.

Each row lists the basket type, the multiplicity, the weight and class
columns as they are usually printed, ``delta0`` and the admissible ``K^2``
values.  Every row also lists its concrete canonical representatives
``(r, b, q)``, so a search result can be compared point by point.  Rows whose
``delta0`` depends on the point are stored as lookup maps keyed by ``q1`` or
``|b1|``.  Nothing here is computed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Mapping, Sequence

from dpfibers.arith import format_rational, parse_rational
from dpfibers.classifier import ClassificationReport, GoldenStatus

Triple = tuple[int, int, int]

EVEN = (2, 4, 6, 8)
ODD = (1, 3, 5, 7, 9)


@dataclass(frozen=True)
class GoldenRow:
    type_label: tuple[int, ...]
    m_o: int
    b_pattern: str
    q_pattern: str
    k2_label: str
    regular: bool
    # one entry per canonical representative basket
    representatives: tuple[tuple[Triple, ...], ...]
    # Fraction, or a map from the key named by ``delta0_key`` to a Fraction
    delta0: Fraction | Mapping[int, Fraction]
    delta0_key: str | None
    k2_values: tuple[int, ...] | Mapping[int, tuple[int, ...]]

    @property
    def label(self) -> str:
        return ",".join(str(r) for r in self.type_label)

    def _key(self, points: Sequence[Triple]) -> int:
        first = points[0]
        return first[2] if self.delta0_key == "q1" else first[1]

    def expected_delta0(self, points: Sequence[Triple]) -> Fraction:
        if isinstance(self.delta0, Mapping):
            return self.delta0[self._key(points)]
        return self.delta0

    def expected_k2(self, points: Sequence[Triple]) -> tuple[int, ...]:
        if isinstance(self.k2_values, Mapping):
            return self.k2_values[self._key(points)]
        return self.k2_values


TABLE1: tuple[GoldenRow, ...] = (
    GoldenRow(
        (2, 3, 6), 6, "(1,±1,±1)", "q_i ≡ -1", "6", True,
        (((2, 1, 1), (3, 1, 2), (6, 1, 5)),),
        Fraction(-1, 6), None, (6,),
    ),
    GoldenRow(
        (5, 5), 5, "b_1^2+b_2^2 ≡ 0", "q_i ≡ -1", "5", True,
        (((5, 1, 4), (5, 2, 4)),),
        Fraction(-1, 5), None, (5,),
    ),
    GoldenRow(
        (2, 4, 4), 4, "(1,±1,±1)", "q_i ≡ -1", "4, 8", True,
        (((2, 1, 1), (4, 1, 3), (4, 1, 3)),),
        Fraction(-1, 4), None, (4, 8),
    ),
    GoldenRow(
        (3, 3, 3), 3, "(±1,±1,±1)", "q_i ≡ -1", "3, 6, 9", True,
        (((3, 1, 2), (3, 1, 2), (3, 1, 2)),),
        Fraction(-1, 3), None, (3, 6, 9),
    ),
    GoldenRow(
        (2, 2, 2, 2), 2, "(1,1,1,1)", "q_i ≡ 1", "even", True,
        (((2, 1, 1), (2, 1, 1), (2, 1, 1), (2, 1, 1)),),
        Fraction(-1, 2), None, EVEN,
    ),
    GoldenRow(
        (3, 6), 3, "(±1,±1)", "q_i ≡ 4", "3, 6, 9", False,
        (((3, 1, 1), (6, 1, 4)),),
        Fraction(2, 3), None, (3, 6, 9),
    ),
    GoldenRow(
        (9,), 3, "b_1 = ±2q_1/3", "q_1 = 3 or 6", "≡ q_1/3 mod 3", False,
        (((9, 2, 3),), ((9, 4, 6),)),
        {3: Fraction(1, 3), 6: Fraction(0)}, "q1",
        {3: (1, 4, 7), 6: (2, 5, 8)},
    ),
    GoldenRow(
        (2, 2, 4), 2, "(1,1,±1)", "q_i ≡ r_i/2", "odd", False,
        (((2, 1, 1), (2, 1, 1), (4, 1, 2)),),
        Fraction(0), None, ODD,
    ),
    GoldenRow(
        (4, 4), 2, "(±1,±1)", "q_i ≡ r_i/2", "even", False,
        (((4, 1, 2), (4, 1, 2)),),
        Fraction(1, 2), None, EVEN,
    ),
    GoldenRow(
        (2, 6), 2, "(1,±1)", "q_i ≡ r_i/2", "even", False,
        (((2, 1, 1), (6, 1, 3)),),
        Fraction(1, 2), None, EVEN,
    ),
    GoldenRow(
        (8,), 2, "(±1) or (±3)", "q_i ≡ r_i/2", "odd", False,
        (((8, 1, 4),), ((8, 3, 4),)),
        {1: Fraction(1), 3: Fraction(0)}, "b1",
        ODD,
    ),
)

# column label -> printed entry; parameterized entries with their lookup maps
TABLE2: tuple[tuple[str, str, Mapping[int, Fraction]], ...] = (
    ("regular", "-1/m_o", {m: Fraction(-1, m) for m in (2, 3, 4, 5, 6)}),
    ("3,6", "2/3", {}),
    ("9", "(6-q_1)/9", {3: Fraction(1, 3), 6: Fraction(0)}),
    ("2,2,4", "0", {}),
    ("4,4", "1/2", {}),
    ("2,6", "1/2", {}),
    ("8", "(3-|b_1|)/2", {1: Fraction(1), 3: Fraction(0)}),
)


def expected_table1() -> list[GoldenRow]:
    return list(TABLE1)


def rows_for(m_o: int, rows: Sequence[GoldenRow] | None = None) -> list[GoldenRow]:
    return [row for row in (TABLE1 if rows is None else rows) if row.m_o == m_o]


def diff_report(
    report: ClassificationReport, rows: Sequence[GoldenRow] | None = None
) -> GoldenStatus:
    """Compare a report with the reference rows for its multiplicity.

    Only multiplicities 2..6 have reference rows; anything else is ``n/a``.
    """
    if not 2 <= report.m_o <= 6:
        return GoldenStatus("n/a")
    expected = {row.type_label: row for row in rows_for(report.m_o, rows)}
    found = {g.indices: g for g in report.groups}
    details = []

    for label in sorted(set(expected) - set(found)):
        details.append(f"row {expected[label].label}: missing from search output")
    for label in sorted(set(found) - set(expected)):
        details.append(f"extra type {','.join(map(str, label))}: not in the table")

    for label in sorted(set(expected) & set(found)):
        row, group = expected[label], found[label]
        want = sorted(row.representatives)
        got = sorted(tuple(p.as_tuple() for p in s.basket) for s in group.solutions)
        if want != got:
            column = _divergent_column(want, got)
            details.append(f"row {row.label}: column {column}: expected {want}, got {got}")
            continue
        for s in group.solutions:
            points = [p.as_tuple() for p in s.basket]
            if s.delta0 != row.expected_delta0(points):
                details.append(
                    f"row {row.label}: column delta0: expected "
                    f"{format_rational(row.expected_delta0(points))}, got {format_rational(s.delta0)}"
                )
            if tuple(s.k2_allowed) != tuple(row.expected_k2(points)):
                details.append(
                    f"row {row.label}: column K2: expected {list(row.expected_k2(points))}, "
                    f"got {list(s.k2_allowed)}"
                )
            if s.regular != row.regular:
                details.append(
                    f"row {row.label}: column regular: expected {row.regular}, got {s.regular}"
                )
    return GoldenStatus("mismatch", tuple(details)) if details else GoldenStatus("match")


def _divergent_column(want: list, got: list) -> str:
    if len(want) != len(got):
        return "basket"
    for w, g in zip(want, got):
        if [p[1] for p in w] != [p[1] for p in g]:
            return "b"
        if [p[2] for p in w] != [p[2] for p in g]:
            return "q"
    return "basket"


def row_to_json(row: GoldenRow) -> dict[str, Any]:
    def keyed(value, render):
        if isinstance(value, Mapping):
            return {str(k): render(v) for k, v in sorted(value.items())}
        return render(value)

    return {
        "type": list(row.type_label),
        "m_o": row.m_o,
        "b": row.b_pattern,
        "q": row.q_pattern,
        "k2_label": row.k2_label,
        "regular": row.regular,
        "representatives": [
            [{"r": r, "b": b, "q": q} for r, b, q in rep] for rep in row.representatives
        ],
        "delta0": keyed(row.delta0, format_rational),
        "delta0_key": row.delta0_key,
        "k2": keyed(row.k2_values, list),
    }


def row_from_json(data: Mapping[str, Any]) -> GoldenRow:
    def keyed(value, parse):
        if isinstance(value, Mapping):
            return {int(k): parse(v) for k, v in value.items()}
        return parse(value)

    return GoldenRow(
        type_label=tuple(data["type"]),
        m_o=int(data["m_o"]),
        b_pattern=data["b"],
        q_pattern=data["q"],
        k2_label=data["k2_label"],
        regular=bool(data["regular"]),
        representatives=tuple(
            tuple((p["r"], p["b"], p["q"]) for p in rep) for rep in data["representatives"]
        ),
        delta0=keyed(data["delta0"], parse_rational),
        delta0_key=data["delta0_key"],
        k2_values=keyed(data["k2"], tuple),
    )


def table1_json(rows: Sequence[GoldenRow] = TABLE1) -> str:
    return json.dumps({"table1": [row_to_json(r) for r in rows]}, indent=2, ensure_ascii=False)


def load_rows(text: str) -> list[GoldenRow]:
    return [row_from_json(r) for r in json.loads(text)["table1"]]


def table1_markdown(rows: Sequence[GoldenRow] = TABLE1) -> str:
    lines = [
        "| type | m_o | B(F_o) | (b_1,...,b_n) | q_i | K^2 |",
        "|---|---|---|---|---|---|",
    ]
    for row in rows:
        lines.append(
            f"| {row.label} | {row.m_o} | ({row.label}) | {row.b_pattern} "
            f"| {row.q_pattern} | {row.k2_label} |"
        )
    return "\n".join(lines)


def table1_text(rows: Sequence[GoldenRow] = TABLE1) -> str:
    header = ("type", "m_o", "b", "q", "K^2")
    body = [(r.label, str(r.m_o), r.b_pattern, r.q_pattern, r.k2_label) for r in rows]
    widths = [max(len(line[i]) for line in (header, *body)) for i in range(len(header))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(line, widths)).rstrip()
        for line in (header, *body)
    )


def table2_json() -> str:
    return json.dumps(
        {
            "table2": [
                {
                    "column": col,
                    "delta0": printed,
                    "values": {str(k): format_rational(v) for k, v in sorted(values.items())},
                }
                for col, printed, values in TABLE2
            ]
        },
        indent=2,
    )


def table2_markdown() -> str:
    cols = [c for c, _, _ in TABLE2]
    return "\n".join(
        [
            "| | " + " | ".join(cols) + " |",
            "|---|" + "---|" * len(cols),
            "| delta0 | " + " | ".join(p for _, p, _ in TABLE2) + " |",
        ]
    )


def table2_text() -> str:
    width = max(len(c) for c, _, _ in TABLE2)
    lines = []
    for col, printed, values in TABLE2:
        extra = ""
        if values:
            extra = "  (" + ", ".join(f"{k}: {format_rational(v)}" for k, v in sorted(values.items())) + ")"
        lines.append(f"{col.ljust(width)}  {printed}{extra}")
    return "\n".join(lines)
