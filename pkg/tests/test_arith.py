from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dpfibers.arith import (
    InvalidWeightError,
    canonical_weight,
    format_rational,
    parse_rational,
    smallest_residue,
)


@pytest.mark.parametrize("x, r, expected", [(7, 9, 7), (-1, 6, 5), (20, 6, 2), (0, 1, 0)])
def test_smallest_residue(x, r, expected):
    assert smallest_residue(x, r) == expected


def test_smallest_residue_rejects_zero_modulus():
    with pytest.raises(ValueError):
        smallest_residue(3, 0)


@pytest.mark.parametrize("b, r, expected", [(7, 9, 2), (1, 2, 1), (5, 8, 3), (-1, 7, 1)])
def test_canonical_weight(b, r, expected):
    assert canonical_weight(b, r) == expected


def test_canonical_weight_requires_coprime():
    with pytest.raises(InvalidWeightError):
        canonical_weight(2, 4)


@given(st.integers(-(10**6), 10**6), st.integers(1, 500))
def test_residue_is_periodic_and_in_range(x, r):
    s = smallest_residue(x, r)
    assert 0 <= s < r
    assert (s - x) % r == 0
    assert smallest_residue(x + r, r) == s


@given(st.integers(2, 200), st.data())
def test_canonical_weight_symmetric(r, data):
    b = data.draw(st.integers(1, r - 1))
    if Fraction(b, r).denominator != r:
        return
    assert canonical_weight(b, r) == canonical_weight(r - b, r)
    assert 1 <= canonical_weight(b, r) <= r // 2


big = st.integers(-(2**64), 2**64)
pos = st.integers(1, 2**64)


@given(big, pos, big, pos)
def test_rational_sum_is_exact(a, b, c, d):
    total = Fraction(a, b) + Fraction(c, d)
    assert total.numerator * b * d == (a * d + c * b) * total.denominator
    assert total.denominator >= 1


@pytest.mark.parametrize(
    "value, text", [(Fraction(-10, 11), "-10/11"), (Fraction(0), "0"), (Fraction(3), "3")]
)
def test_format_rational(value, text):
    assert format_rational(value) == text
    assert parse_rational(text) == value


def test_parse_rational_rejects_decimals():
    with pytest.raises(ValueError):
        parse_rational("0.5")
