import itertools
from fractions import Fraction

import pytest

from dpfibers.classifier import (
    SearchBounds,
    anchor_ok,
    classify,
    derived_basket,
    divisibility_ok,
    enumerate_states,
    k2_allowed,
    master_residuals,
    prime_exclusion_check,
    prime_index_multisets,
    search,
    subbasket_consistency,
)
from dpfibers.orbifold_rr import Basket, CycQuotPoint, xi_budget_residual

REGULAR_236 = Basket.of((2, 1, 1), (3, 1, 2), (6, 1, 5))


def brute_force(m_o, r_max, n_max, anchor=True):
    """Unpruned enumeration of every multiset of states."""
    states = enumerate_states(m_o, r_max)
    found = []
    for n in range(0, n_max + 1):
        for combo in itertools.combinations_with_replacement(states, n):
            basket = Basket(combo)
            if any(master_residuals(m_o, basket)):
                continue
            if anchor and not anchor_ok(m_o, basket):
                continue
            found.append(basket)
    return sorted(found)


@pytest.mark.parametrize("m_o", range(1, 9))
@pytest.mark.parametrize("anchor", [True, False])
def test_search_agrees_with_brute_force(m_o, anchor):
    bounds = SearchBounds(r_max=9, n_max=4, anchor_filter=anchor)
    assert search(m_o, bounds) == brute_force(m_o, 9, 4, anchor)


def test_divisibility():
    assert divisibility_ok(2, CycQuotPoint(4, 1, 2))
    assert not divisibility_ok(6, CycQuotPoint(5, 1, 1))


def test_master_residuals():
    assert master_residuals(6, REGULAR_236) == [0] * 5
    assert master_residuals(1, Basket()) == []
    for b in range(1, 6):
        for q in range(1, 11):
            assert any(master_residuals(11, Basket.of((11, b, q))))


def test_anchor():
    assert anchor_ok(5, Basket.of((5, 1, 4), (5, 2, 4)))
    assert not anchor_ok(4, Basket.of((2, 1, 1), (2, 1, 1)))
    assert anchor_ok(1, Basket())


def test_enumerate_states():
    got = [p.as_tuple() for p in enumerate_states(2, 8)]
    assert got == [(2, 1, 1), (4, 1, 2), (6, 1, 3), (8, 1, 4), (8, 3, 4)]
    nine = {p.as_tuple() for p in enumerate_states(3, 9) if p.r == 9}
    assert nine == {(9, 1, 3), (9, 1, 6), (9, 2, 3), (9, 2, 6), (9, 4, 3), (9, 4, 6)}
    assert enumerate_states(1, 12) == []


def test_search_examples():
    assert search(5) == [Basket.of((5, 1, 4), (5, 2, 4))]
    assert search(7) == []
    six = search(6)
    assert [b.indices for b in six] == [(2, 3, 6)]
    assert all(p.q == p.r - 1 for p in six[0])


@pytest.mark.parametrize(
    "m, expected",
    [
        (2, [(8,), (2, 6), (4, 4), (2, 2, 4), (2, 2, 2, 2)]),
        (3, [(9,), (3, 6), (3, 3, 3)]),
        (5, [(10,), (5, 5)]),
        (7, []),
        (11, [(11,)]),
        (13, []),
    ],
)
def test_prime_index_multisets(m, expected):
    assert prime_index_multisets(m) == expected


def test_prime_index_multisets_needs_prime():
    with pytest.raises(ValueError):
        prime_index_multisets(4)


def test_prime_exclusion():
    assert not prime_exclusion_check(11, (11,))
    assert not prime_exclusion_check(5, (10,))
    assert prime_exclusion_check(5, (5, 5))
    for p in (2, 3):
        for multiset in prime_index_multisets(p):
            assert prime_exclusion_check(p, multiset)


def test_derived_basket():
    assert derived_basket(REGULAR_236, 3) == Basket.of((2, 1, 1), (6, 1, 3))
    assert derived_basket(REGULAR_236, 2) == Basket.of((3, 1, 1), (6, 1, 4))
    assert derived_basket(REGULAR_236, 1) == REGULAR_236


def test_subbasket_consistency():
    basket = Basket.of((2, 1, 1), (4, 1, 3), (4, 1, 3))
    assert subbasket_consistency(4, basket)
    assert derived_basket(basket, 2).indices == (4, 4)
    assert subbasket_consistency(6, REGULAR_236)


@pytest.mark.parametrize(
    "m_o, delta0, expected",
    [
        (6, Fraction(-1, 6), (6,)),
        (2, Fraction(0), (1, 3, 5, 7, 9)),
        (3, Fraction(2, 3), (3, 6, 9)),
        (1, Fraction(0), tuple(range(1, 10))),
    ],
)
def test_k2_allowed(m_o, delta0, expected):
    assert k2_allowed(m_o, delta0) == expected


def test_classify_three():
    report = classify(3)
    assert [g.indices for g in report.groups] == [(3, 3, 3), (3, 6), (9,)]
    nine = report.groups[2].solutions
    assert {(s.basket.points[0].q, s.basket.points[0].b) for s in nine} == {(3, 2), (6, 4)}


def test_classify_one():
    report = classify(1)
    assert len(report.solutions) == 1
    (only,) = report.solutions
    assert len(only.basket) == 0
    assert only.k2_allowed == tuple(range(1, 10))


def test_classify_eight_is_empty_with_reason():
    report = classify(8)
    assert report.solutions == []
    assert any("anchor" in n for n in report.notes)


@pytest.mark.parametrize("m_o", range(1, 13))
def test_search_invariants(m_o):
    for basket in search(m_o):
        assert xi_budget_residual(m_o, basket) == 0
        assert subbasket_consistency(m_o, basket)
        if m_o in (2, 3, 5, 7, 11):
            assert basket.indices in prime_index_multisets(m_o)


@pytest.mark.parametrize("m_o", range(2, 7))
def test_regular_solutions_have_multiples_of_m(m_o):
    for s in classify(m_o).solutions:
        if s.regular:
            assert s.k2_allowed == tuple(d for d in range(1, 10) if d % m_o == 0)


def test_no_anchor_mode_adds_nothing_at_default_bounds():
    for m in range(2, 13):
        loose = search(m, SearchBounds(anchor_filter=False))
        assert loose == search(m)
