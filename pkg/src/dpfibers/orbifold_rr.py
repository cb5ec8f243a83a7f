"""Local orbifold Riemann-Roch contributions of terminal cyclic quotient points.

A point of type ``1/r (1, -1, b)`` carrying a Weil divisor ``D ~ q K`` locally
contributes

    c(r, b, q) = -q (r^2 - 1) / (12 r) + sum_{j=1}^{q-1} [bj] (r - [bj]) / (2 r)

to ``chi(D)``, where ``[x]`` is the smallest residue of ``x`` mod ``r`` and ``q``
is reduced mod ``r`` first.  Everything here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Iterator

from dpfibers.arith import InvalidWeightError, canonical_weight, smallest_residue


class NotApplicableError(ValueError):
    """The closed form for the partial sum does not apply to these arguments."""


@dataclass(frozen=True, order=True)
class CycQuotPoint:
    """One basket point: index ``r``, weight ``b`` and local class ``q`` of the divisor.

    ``b`` is replaced by its canonical representative on construction.  ``q``
    must lie in ``1..r-1``; a point where the divisor is Cartier does not
    belong to its basket.
    """

    r: int
    b: int
    q: int

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError(f"basket points need index >= 2, got r={self.r}")
        object.__setattr__(self, "b", canonical_weight(self.b, self.r))
        if not 1 <= self.q <= self.r - 1:
            raise ValueError(f"local class q={self.q} outside 1..{self.r - 1}")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.r, self.b, self.q)

    def __str__(self) -> str:
        return f"1/{self.r}(1,-1,{self.b}) q={self.q}"


@dataclass(frozen=True)
class Basket:
    """Multiset of basket points, kept in sorted ``(r, b, q)`` order."""

    points: tuple[CycQuotPoint, ...] = field(default=())

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(sorted(self.points)))

    @classmethod
    def of(cls, *triples: tuple[int, int, int]) -> Basket:
        return cls(tuple(CycQuotPoint(*t) for t in triples))

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(p.r for p in self.points)

    def __iter__(self) -> Iterator[CycQuotPoint]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __lt__(self, other: Basket) -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self) -> tuple:
        return tuple(p.as_tuple() for p in self.points)

    def __str__(self) -> str:
        return "{" + ", ".join(f"({p.r},{p.b},{p.q})" for p in self.points) + "}"


def _check_weight(r: int, b: int) -> None:
    if r < 1:
        raise ValueError(f"index must be positive, got {r}")
    if r >= 2 and gcd(b, r) != 1:
        raise InvalidWeightError(f"weight {b} is not coprime to index {r}")


def _scaled_c(r: int, b: int, qbar: int) -> int:
    # 12r * c(r, b, qbar), straight from the defining sum
    total = 0
    for j in range(1, qbar):
        bj = smallest_residue(b * j, r)
        total += bj * (r - bj)
    return -qbar * (r * r - 1) + 6 * total


def c_local(r: int, b: int, q_raw: int) -> Fraction:
    """Local contribution ``c_P(D)`` for ``D ~ q_raw K`` near a point ``1/r(1,-1,b)``.

    >>> c_local(2, 1, 1)
    Fraction(-1, 8)
    >>> c_local(9, 2, 3)
    Fraction(-1, 3)
    """
    _check_weight(r, b)
    if r == 1:
        return Fraction(0)
    qbar = smallest_residue(q_raw, r)
    if qbar == 0:
        return Fraction(0)
    return Fraction(_scaled_c(r, b, qbar), 12 * r)


@lru_cache(maxsize=4096)
def c_table(r: int, b: int) -> tuple[Fraction, ...]:
    """``c_local(r, b, q)`` for ``q = 0..r-1``, built with one running sum.

    Read-only after construction, so sharing the cache between threads is safe.
    """
    _check_weight(r, b)
    if r == 1:
        return (Fraction(0),)
    values = [Fraction(0)]
    running = 0
    for qbar in range(1, r):
        if qbar >= 2:
            bj = smallest_residue(b * (qbar - 1), r)
            running += bj * (r - bj)
        values.append(Fraction(-qbar * (r * r - 1) + 6 * running, 12 * r))
    return tuple(values)


def c_minus_K(r: int, b: int) -> Fraction:
    """Closed form of ``c_P(-K)``."""
    if r < 2:
        raise ValueError(f"index must be at least 2, got {r}")
    _check_weight(r, b)
    return Fraction(r * r - 1, 12 * r) - Fraction(b * (r - b), 2 * r)


def c_K(r: int) -> Fraction:
    """Closed form of ``c_P(K)``; independent of the weight."""
    if r < 2:
        raise ValueError(f"index must be at least 2, got {r}")
    return Fraction(-(r * r - 1), 12 * r)


def xi_direct(r: int, b: int, q: int, m: int) -> Fraction:
    """Partial sum ``sum_{l=1}^{m-1} c(r, b, l q)``, evaluated term by term."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    table = c_table(r, b)
    return sum((table[smallest_residue(l * q, r)] for l in range(1, m)), Fraction(0))


def xi_closed(r: int, q: int, m: int) -> Fraction:
    """Closed form ``-(m^2 - 1) r / (24 m)`` of the partial sum.

    Valid only when ``m * gcd(r, q) == r``, i.e. ``m`` is exactly the order of
    ``q`` modulo ``r``.  Otherwise :class:`NotApplicableError` is raised and the
    caller should use :func:`xi_direct`.
    """
    if r < 2 or m < 2:
        raise NotApplicableError(f"closed form needs r >= 2 and m >= 2 (r={r}, m={m})")
    if m * gcd(r, q) != r:
        raise NotApplicableError(f"m * gcd(r, q) = {m * gcd(r, q)} differs from r = {r}")
    return Fraction(-(m * m - 1) * r, 24 * m)


def xi_budget_residual(m: int, basket: Iterable[CycQuotPoint]) -> Fraction:
    """``sum_P xi(P, m) + (m - 1)/2``; zero exactly when the budget balances."""
    total = sum((xi_direct(p.r, p.b, p.q, m) for p in basket), Fraction(0))
    return total + Fraction(m - 1, 2)


def delta_a(basket: Iterable[CycQuotPoint], a: int) -> Fraction:
    """Difference ``sum c(-K - a F) - sum c(-K - (a+1) F)`` over the basket."""
    if a < 0:
        raise ValueError(f"a must be non-negative, got {a}")
    total = Fraction(0)
    for p in basket:
        table = c_table(p.r, p.b)
        total += table[smallest_residue(-1 - a * p.q, p.r)]
        total -= table[smallest_residue(-1 - (a + 1) * p.q, p.r)]
    return total
