"""Exact rationals and residue helpers.

Rationals are :class:`fractions.Fraction` throughout: always reduced, with a
positive denominator, so equality is structural and hashing is cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Rational = Fraction


class InvalidWeightError(ValueError):
    """Raised when a weight ``b`` is not coprime to the index ``r``."""


def smallest_residue(x: int, r: int) -> int:
    """Return the representative of ``x`` modulo ``r`` in ``[0, r)``."""
    if r < 1:
        raise ValueError(f"modulus must be positive, got {r}")
    return x % r


def canonical_weight(b: int, r: int) -> int:
    """Pick the smaller of ``b`` and ``r - b`` modulo ``r``.

    The local Riemann-Roch term does not see the difference between the
    weights ``b`` and ``-b``, so baskets store the representative in
    ``[1, r // 2]``.
    """
    if r < 2:
        raise ValueError(f"index must be at least 2, got {r}")
    if gcd(b, r) != 1:
        raise InvalidWeightError(f"weight {b} is not coprime to index {r}")
    b = smallest_residue(b, r)
    return min(b, r - b)


def format_rational(x: Fraction) -> str:
    """Render as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; rejects decimal notation."""
    text = text.strip()
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text)
