"""Text, markdown and JSON renderings of classification reports."""

from __future__ import annotations

import json
from typing import Any

from dpfibers.arith import format_rational, parse_rational
from dpfibers.classifier import (
    ClassificationReport,
    FiberSolution,
    GoldenStatus,
    SearchBounds,
    SolutionGroup,
)
from dpfibers.orbifold_rr import Basket, CycQuotPoint

FORMATS = ("text", "md", "json")


def weight_pattern(basket: Basket) -> str:
    """Weights as printed in tables: ``±b``, except plain ``1`` at index 2."""
    return "(" + ",".join("1" if p.r == 2 else f"±{p.b}" for p in basket) + ")"


def class_pattern(basket: Basket) -> str:
    return "(" + ",".join(str(p.q) for p in basket) + ")"


def type_label(indices: tuple[int, ...]) -> str:
    return ",".join(str(r) for r in indices) or "empty"


def k2_label(k2: tuple[int, ...]) -> str:
    if tuple(k2) == (1, 3, 5, 7, 9):
        return "odd"
    if tuple(k2) == (2, 4, 6, 8):
        return "even"
    return ", ".join(str(d) for d in k2) or "none"


def report_to_dict(report: ClassificationReport) -> dict[str, Any]:
    return {
        "m_o": report.m_o,
        "bounds": {
            "r_max": report.bounds.r_max,
            "n_max": report.bounds.n_max,
            "anchor_filter": report.bounds.anchor_filter,
        },
        "groups": [
            {
                "indices": list(g.indices),
                "solutions": [
                    {
                        "points": [{"r": p.r, "b": p.b, "q": p.q} for p in s.basket],
                        "regular": s.regular,
                        "delta0": format_rational(s.delta0),
                        "k2": list(s.k2_allowed),
                    }
                    for s in g.solutions
                ],
            }
            for g in report.groups
        ],
        "golden_status": report.golden_status.kind,
        "golden_details": list(report.golden_status.details),
        "notes": list(report.notes),
    }


def report_from_dict(data: dict[str, Any]) -> ClassificationReport:
    m_o = int(data["m_o"])
    bounds = SearchBounds(**data["bounds"])
    groups = []
    for g in data["groups"]:
        sols = []
        for s in g["solutions"]:
            basket = Basket(tuple(CycQuotPoint(p["r"], p["b"], p["q"]) for p in s["points"]))
            sols.append(
                FiberSolution(
                    m_o=m_o,
                    basket=basket,
                    regular=bool(s["regular"]),
                    delta0=parse_rational(s["delta0"]),
                    k2_allowed=tuple(s["k2"]),
                    index_multiset=basket.indices,
                )
            )
        groups.append(SolutionGroup(tuple(g["indices"]), tuple(sols)))
    status = GoldenStatus(data["golden_status"], tuple(data.get("golden_details", ())))
    return ClassificationReport(m_o, bounds, tuple(groups), status, tuple(data.get("notes", ())))


def render_json(report: ClassificationReport) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False)


def parse_json(text: str) -> ClassificationReport:
    return report_from_dict(json.loads(text))


def _split(report: ClassificationReport) -> tuple[list[SolutionGroup], list[SolutionGroup]]:
    # anchored groups first; the rest only appear with the anchor filter off
    anchored, loose = [], []
    for g in report.groups:
        a = tuple(s for s in g.solutions if s.anchored)
        rest = tuple(s for s in g.solutions if not s.anchored)
        if a:
            anchored.append(SolutionGroup(g.indices, a))
        if rest:
            loose.append(SolutionGroup(g.indices, rest))
    return anchored, loose


def render_text(report: ClassificationReport) -> str:
    b = report.bounds
    lines = [
        f"multiplicity m_o = {report.m_o}",
        f"bounds: r_max={b.r_max} n_max={b.n_max} anchor_filter={'on' if b.anchor_filter else 'off'}",
    ]
    anchored, loose = _split(report)
    if not report.groups:
        lines.append("no baskets satisfy the constraints")

    def emit(groups: list[SolutionGroup]) -> None:
        for g in groups:
            lines.append(f"type {type_label(g.indices)}:")
            for s in g.solutions:
                raw = " ".join(f"(r={p.r},b={p.b},q={p.q})" for p in s.basket) or "(empty basket)"
                lines.append(f"  {raw}")
                lines.append(
                    f"    b={weight_pattern(s.basket)} q={class_pattern(s.basket)} "
                    f"{'regular' if s.regular else 'irregular'} "
                    f"delta0={format_rational(s.delta0)} K^2: {k2_label(s.k2_allowed)}"
                )

    emit(anchored)
    if loose:
        lines.append("arithmetic-only solutions (anchor condition fails):")
        emit(loose)
    for note in report.notes:
        lines.append(f"note: {note}")
    lines.append(f"golden: {report.golden_status.kind}")
    for d in report.golden_status.details:
        lines.append(f"  {d}")
    return "\n".join(lines)


def render_markdown(report: ClassificationReport) -> str:
    b = report.bounds
    lines = [
        f"## m_o = {report.m_o}",
        "",
        f"bounds: r_max={b.r_max}, n_max={b.n_max}, anchor_filter={'on' if b.anchor_filter else 'off'}",
        "",
    ]
    anchored, loose = _split(report)

    def table(groups: list[SolutionGroup]) -> None:
        lines.append("| type | m_o | B(F_o) | (b_1,...,b_n) | q_i | K^2 | delta0 |")
        lines.append("|---|---|---|---|---|---|---|")
        for g in groups:
            for s in g.solutions:
                lines.append(
                    f"| {type_label(g.indices)} | {report.m_o} | ({type_label(g.indices)}) "
                    f"| {weight_pattern(s.basket)} | {class_pattern(s.basket)} "
                    f"| {k2_label(s.k2_allowed)} | {format_rational(s.delta0)} |"
                )

    if anchored:
        table(anchored)
    elif not loose:
        lines.append("No baskets satisfy the constraints.")
    if loose:
        lines += ["", "### arithmetic-only (anchor condition fails)", ""]
        table(loose)
    if report.notes:
        lines.append("")
        lines += [f"- {n}" for n in report.notes]
    lines += ["", f"golden: {report.golden_status.kind}"]
    lines += [f"- {d}" for d in report.golden_status.details]
    return "\n".join(lines)


def render(report: ClassificationReport, fmt: str) -> str:
    if fmt == "json":
        return render_json(report)
    if fmt == "md":
        return render_markdown(report)
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")
