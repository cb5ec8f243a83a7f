"""Exhaustive property checks over all small indices.

Each suite walks every instance up to an index bound and records how many
instances it checked along with the first few counterexamples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable

from dpfibers.arith import smallest_residue
from dpfibers.classifier import (
    SearchBounds,
    is_prime,
    master_residuals,
    prime_exclusion_check,
    prime_index_multisets,
    search,
    subbasket_consistency,
)
from dpfibers.orbifold_rr import (
    c_K,
    c_local,
    c_minus_K,
    c_table,
    xi_budget_residual,
    xi_closed,
    xi_direct,
)

MAX_COUNTEREXAMPLES = 10


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    failed: int = 0
    info: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def check(self, ok: bool, describe: Callable[[], str]) -> None:
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_COUNTEREXAMPLES:
                self.failures.append(describe())


def weights(r: int) -> list[int]:
    return [b for b in range(1, r) if gcd(b, r) == 1]


def lemma_sp(r_max: int = 60) -> SuiteResult:
    """Direct partial sum equals the closed form when ``m`` is the order of ``q``."""
    res = SuiteResult("lemma-sp")
    for r in range(2, r_max + 1):
        for b in weights(r):
            for q in range(1, r):
                m = r // gcd(r, q)
                direct = xi_direct(r, b, q, m)
                closed = xi_closed(r, q, m)
                formula = Fraction(-(m * m - 1) * r, 24 * m)
                res.check(
                    direct == closed == formula,
                    lambda: f"r={r} b={b} q={q} m={m}: direct={direct} closed={closed}",
                )
    return res


def su_div(r_max: int = 40) -> SuiteResult:
    """``xi(m1 m2) = m2 xi(m1)`` whenever ``m1 q = 0 mod r``.

    ``m1`` runs over the order of ``q`` and twice the order, ``m2`` over 1..3.
    """
    res = SuiteResult("su-div")
    for r in range(2, min(r_max, 40) + 1):
        for b in weights(r):
            for q in range(1, r):
                order = r // gcd(r, q)
                for m1 in (order, 2 * order):
                    base = xi_direct(r, b, q, m1)
                    for m2 in (1, 2, 3):
                        res.check(
                            xi_direct(r, b, q, m1 * m2) == m2 * base,
                            lambda: f"r={r} b={b} q={q} m1={m1} m2={m2}",
                        )
    return res


def periodicity(r_max: int = 60) -> SuiteResult:
    """``c(r, b, q + r) = c(r, b, q)`` for ``0 <= q <= 2r``, and the cached table agrees."""
    res = SuiteResult("periodicity")
    for r in range(2, r_max + 1):
        for b in weights(r):
            table = c_table(r, b)
            for q in range(0, 2 * r + 1):
                value = c_local(r, b, q)
                res.check(
                    value == c_local(r, b, q + r) == table[q % r],
                    lambda: f"r={r} b={b} q={q}",
                )
    return res


def symmetry(r_max: int = 60) -> SuiteResult:
    """``c(r, b, q) = c(r, r - b, q)``."""
    res = SuiteResult("symmetry")
    for r in range(2, r_max + 1):
        for b in weights(r):
            if b > r - b:
                continue
            for q in range(r):
                res.check(
                    c_local(r, b, q) == c_local(r, r - b, q),
                    lambda: f"r={r} b={b} q={q}",
                )
    return res


def full_period(r_max: int = 60) -> SuiteResult:
    """``sum_{j=1}^{r-1} [bj](r - [bj]) = r (r^2 - 1)/6``, i.e. ``c(r K) = 0``."""
    res = SuiteResult("full-period")
    for r in range(2, r_max + 1):
        for b in weights(r):
            total = 0
            for j in range(1, r):
                bj = smallest_residue(b * j, r)
                total += bj * (r - bj)
            res.check(
                6 * total == r * (r * r - 1),
                lambda: f"r={r} b={b}: sum={total}, expected {Fraction(r * (r * r - 1), 6)}",
            )
            if r == 2:
                res.info.append(f"r=2 b={b}: sum = {total}")
    return res


def specializations(r_max: int = 60) -> SuiteResult:
    """``c(r, b, r-1) = c(-K)`` and ``c(r, b, 1) = c(K)``."""
    res = SuiteResult("specializations")
    for r in range(2, r_max + 1):
        for b in weights(r):
            res.check(c_local(r, b, r - 1) == c_minus_K(r, b), lambda: f"c(-K) r={r} b={b}")
            res.check(c_local(r, b, 1) == c_K(r), lambda: f"c(K) r={r} b={b}")
    return res


# index multisets of the reference table at prime multiplicity
TABLE_PRIME_ROWS = {
    2: [(8,), (2, 6), (4, 4), (2, 2, 4), (2, 2, 2, 2)],
    3: [(9,), (3, 3, 3), (3, 6)],
    5: [(5, 5)],
}
EXPECTED_COUNTS = {2: 5, 3: 3, 5: 2, 11: 1}
EXCLUDED = [(5, (10,)), (11, (11,))]


def prime_bound(r_max: int = 60) -> SuiteResult:
    """Prime levels: only 2, 3, 5, 11 admit index multisets; (10)@5 and (11)@11 fail."""
    res = SuiteResult("prime-bound")
    primes = [p for p in range(2, max(r_max, 11) + 1) if is_prime(p)]
    solvable = {p: prime_index_multisets(p) for p in primes}
    solvable = {p: v for p, v in solvable.items() if v}
    res.check(
        {p: len(v) for p, v in solvable.items()} == EXPECTED_COUNTS,
        lambda: f"solvable primes {sorted(solvable)} with counts "
        f"{ {p: len(v) for p, v in solvable.items()} }",
    )
    res.info.append(f"solvable primes: {sorted(solvable)}")
    for p, multiset in EXCLUDED:
        res.check(
            not prime_exclusion_check(p, multiset),
            lambda: f"{multiset}@{p} admits a solution",
        )
        res.info.append(f"excluded: {multiset}@{p}")
    for p, rows in TABLE_PRIME_ROWS.items():
        for multiset in rows:
            res.check(
                multiset in solvable[p] and prime_exclusion_check(p, multiset),
                lambda: f"table row {multiset}@{p} rejected",
            )
    return res


def xi_budget(r_max: int = 60) -> SuiteResult:
    """Every search output balances the partial-sum budget and its derived baskets."""
    res = SuiteResult("xi-budget")
    bounds = SearchBounds(r_max=min(r_max, 12))
    for m in range(1, 13):
        for basket in search(m, bounds):
            res.check(
                not any(master_residuals(m, basket)), lambda: f"m={m} {basket}: residuals"
            )
            res.check(
                xi_budget_residual(m, basket) == 0, lambda: f"m={m} {basket}: budget"
            )
            res.check(
                subbasket_consistency(m, basket), lambda: f"m={m} {basket}: derived levels"
            )
            if is_prime(m):
                res.check(
                    basket.indices in prime_index_multisets(m),
                    lambda: f"m={m} {basket}: index multiset",
                )
    res.check(xi_direct(9, 2, 1, 9) == Fraction(-10, 3), lambda: "xi(9, 2, 1; 9) != -10/3")
    res.info.append(f"searched m=1..12 with r_max={bounds.r_max}, n_max={bounds.n_max}")
    return res


SUITES: dict[str, Callable[[int], SuiteResult]] = {
    "lemma-sp": lemma_sp,
    "su-div": su_div,
    "periodicity": periodicity,
    "symmetry": symmetry,
    "full-period": full_period,
    "specializations": specializations,
    "prime-bound": prime_bound,
    "xi-budget": xi_budget,
}


def run(name: str, r_max: int = 60) -> list[SuiteResult]:
    if name == "all":
        return [fn(r_max) for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(name)
    return [SUITES[name](r_max)]
