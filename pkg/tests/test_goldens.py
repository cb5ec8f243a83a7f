import dataclasses
import json
from fractions import Fraction

import pytest

from dpfibers.classifier import ClassificationReport, FiberSolution, SolutionGroup, classify
from dpfibers.goldens import (
    diff_report,
    expected_table1,
    load_rows,
    table1_json,
    table1_markdown,
    table2_json,
)
from dpfibers.orbifold_rr import Basket, CycQuotPoint, delta_a


def test_eleven_rows():
    rows = expected_table1()
    assert [r.label for r in rows] == [
        "2,3,6", "5,5", "2,4,4", "3,3,3", "2,2,2,2", "3,6", "9", "2,2,4", "4,4", "2,6", "8",
    ]
    assert [r.m_o for r in rows] == [6, 5, 4, 3, 2, 3, 3, 2, 2, 2, 2]


def test_row_236():
    row = expected_table1()[0]
    assert row.b_pattern == "(1,±1,±1)"
    assert row.k2_values == (6,)
    assert row.regular


def test_row_8_has_two_weights():
    row = expected_table1()[-1]
    assert [rep[0][1] for rep in row.representatives] == [1, 3]
    assert row.k2_label == "odd"


@pytest.mark.parametrize("row", expected_table1(), ids=lambda r: r.label)
def test_delta0_recomputes(row):
    for rep in row.representatives:
        assert delta_a(Basket.of(*rep), 0) == row.expected_delta0(rep)


def test_regular_rows_have_minus_one_over_m():
    for row in expected_table1():
        if row.regular:
            assert row.delta0 == Fraction(-1, row.m_o)


@pytest.mark.parametrize("m_o", range(2, 7))
def test_classification_matches(m_o):
    assert diff_report(classify(m_o)).kind == "match"


def test_not_applicable_outside_table():
    assert diff_report(classify(7)).kind == "n/a"
    assert diff_report(classify(1)).kind == "n/a"


def _corrupt_q(report: ClassificationReport) -> ClassificationReport:
    group = report.groups[0]
    sol = group.solutions[0]
    # (6, 1, 5) -> (6, 1, 1)
    points = sol.basket.points[:-1] + (CycQuotPoint(6, 1, 1),)
    bad = dataclasses.replace(sol, basket=Basket(points))
    return dataclasses.replace(
        report, groups=(SolutionGroup(group.indices, (bad,)),) + report.groups[1:]
    )


def test_corrupted_q_names_row_and_column():
    status = diff_report(_corrupt_q(classify(6)))
    assert status.kind == "mismatch"
    assert any("row 2,3,6" in d and "column q" in d for d in status.details)


def test_corrupted_k2_and_missing_row():
    report = classify(2)
    group = report.groups[0]
    sol: FiberSolution = dataclasses.replace(group.solutions[0], k2_allowed=(1,))
    broken = dataclasses.replace(
        report, groups=(SolutionGroup(group.indices, (sol,)),) + report.groups[2:]
    )
    details = diff_report(broken).details
    assert any("column K2" in d for d in details)
    assert any("missing" in d for d in details)


def test_json_round_trip():
    rows = load_rows(table1_json())
    assert rows == expected_table1()
    assert json.loads(table2_json())["table2"][2]["values"] == {"3": "1/3", "6": "0"}


def test_markdown_columns():
    header = table1_markdown().splitlines()[0]
    assert header == "| type | m_o | B(F_o) | (b_1,...,b_n) | q_i | K^2 |"
