"""Constraint system and exhaustive basket search for multiple fibers.

A fiber ``f*(o) = m_o F`` forces every basket point of ``F`` to satisfy
``m_o q = 0 (mod r)`` and the whole basket to satisfy the master system

    m_o * sum_P c(r_P, b_P, l q_P) = -l,    l = 1, ..., m_o - 1.

:func:`search` enumerates every basket within :class:`SearchBounds` meeting
these conditions, and :func:`classify` decorates the survivors with the
regularity flag, ``delta0`` and the admissible degrees ``K^2`` of a general
fiber.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from dpfibers.arith import smallest_residue
from dpfibers.orbifold_rr import (
    Basket,
    CycQuotPoint,
    c_table,
    delta_a,
    xi_closed,
)

K2_RANGE = range(1, 10)


@dataclass(frozen=True)
class SearchBounds:
    """Largest index ``r_max`` and largest basket size ``n_max`` searched."""

    r_max: int = 12
    n_max: int = 8
    anchor_filter: bool = True

    def __post_init__(self) -> None:
        if self.r_max < 2:
            raise ValueError(f"r_max must be at least 2, got {self.r_max}")
        if self.n_max < 1:
            raise ValueError(f"n_max must be at least 1, got {self.n_max}")


@dataclass(frozen=True)
class FiberSolution:
    m_o: int
    basket: Basket
    regular: bool
    delta0: Fraction
    k2_allowed: tuple[int, ...]
    index_multiset: tuple[int, ...]

    @property
    def anchored(self) -> bool:
        return anchor_ok(self.m_o, self.basket)


@dataclass(frozen=True)
class SolutionGroup:
    indices: tuple[int, ...]
    solutions: tuple[FiberSolution, ...]


@dataclass(frozen=True)
class GoldenStatus:
    """Outcome of comparing a report with the embedded tables."""

    kind: str  # "match", "mismatch" or "n/a"
    details: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.kind != "mismatch"


@dataclass(frozen=True)
class ClassificationReport:
    m_o: int
    bounds: SearchBounds
    groups: tuple[SolutionGroup, ...]
    golden_status: GoldenStatus = GoldenStatus("n/a")
    notes: tuple[str, ...] = field(default=())

    @property
    def solutions(self) -> list[FiberSolution]:
        return [s for g in self.groups for s in g.solutions]


def divisibility_ok(m_o: int, point: CycQuotPoint) -> bool:
    return (m_o * point.q) % point.r == 0


def master_residuals(m_o: int, basket: Iterable[CycQuotPoint]) -> list[Fraction]:
    """``m_o * sum_P c(P, l q_P) + l`` for ``l = 1..m_o-1``.

    All entries vanish exactly when the basket satisfies the master system.
    """
    points = list(basket)
    residuals = []
    for l in range(1, m_o):
        total = sum(
            (c_table(p.r, p.b)[smallest_residue(l * p.q, p.r)] for p in points),
            Fraction(0),
        )
        residuals.append(m_o * total + l)
    return residuals


def anchor_ok(m_o: int, basket: Iterable[CycQuotPoint]) -> bool:
    """Some point has index divisible by ``m_o`` (vacuous for ``m_o = 1``)."""
    if m_o == 1:
        return True
    return any(p.r % m_o == 0 for p in basket)


def enumerate_states(m_o: int, r_max: int) -> list[CycQuotPoint]:
    """All canonical points with ``r <= r_max`` compatible with multiplicity ``m_o``."""
    if r_max < 2:
        raise ValueError(f"r_max must be at least 2, got {r_max}")
    states = []
    for r in range(2, r_max + 1):
        for b in range(1, r // 2 + 1):
            if gcd(b, r) != 1:
                continue
            for q in range(1, r):
                if (m_o * q) % r == 0:
                    states.append(CycQuotPoint(r, b, q))
    return sorted(states)


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _k_window(gap: int, lo_v: int, hi_v: int, rem: int) -> tuple[int, int]:
    # counts k in [0, rem] with k*lo_v <= gap <= k*hi_v; empty when lo > hi
    lo, hi = 0, rem
    if lo_v > 0:
        hi = min(hi, gap // lo_v)
    elif lo_v < 0:
        lo = max(lo, _ceil_div(gap, lo_v))
    elif gap < 0:
        return 1, 0
    if hi_v > 0:
        lo = max(lo, _ceil_div(gap, hi_v))
    elif hi_v < 0:
        hi = min(hi, gap // hi_v)
    elif gap > 0:
        return 1, 0
    return lo, hi


def search(m_o: int, bounds: SearchBounds = SearchBounds()) -> list[Basket]:
    """Every basket within ``bounds`` that satisfies the master system.

    Depth-first over states in non-increasing order, so each multiset is built
    once.  A branch is cut when, for some coordinate (one per ``l`` plus their
    total, the partial-sum budget), no count ``k`` of further points drawn
    from the remaining states can close the gap to the target even at the
    extreme per-point values.  The test is exact integer arithmetic on values
    scaled by a common denominator.
    """
    if m_o < 1:
        raise ValueError(f"m_o must be positive, got {m_o}")
    states = list(reversed(enumerate_states(m_o, bounds.r_max)))
    scale = 12 * lcm(m_o, *(p.r for p in states)) if states else 12 * m_o

    vectors = []
    for p in states:
        table = c_table(p.r, p.b)
        coords = [table[smallest_residue(l * p.q, p.r)] * scale for l in range(1, m_o)]
        coords.append(sum(coords, Fraction(0)))
        vectors.append(tuple(int(c) for c in coords))
    target = tuple(-l * scale // m_o for l in range(1, m_o)) + ((1 - m_o) * scale // 2,)
    dim = len(target)

    n = len(states)
    suffix_min = [[0] * dim for _ in range(n + 1)]
    suffix_max = [[0] * dim for _ in range(n + 1)]
    suffix_anchor = [False] * (n + 1)
    for i in range(n - 1, -1, -1):
        v = vectors[i]
        for k in range(dim):
            if i == n - 1:
                suffix_min[i][k] = suffix_max[i][k] = v[k]
            else:
                suffix_min[i][k] = min(suffix_min[i + 1][k], v[k])
                suffix_max[i][k] = max(suffix_max[i + 1][k], v[k])
        suffix_anchor[i] = suffix_anchor[i + 1] or states[i].r % m_o == 0

    need_anchor = bounds.anchor_filter and m_o > 1
    found: list[Basket] = []

    def feasible(partial: tuple[int, ...], rem: int, start: int, anchored: bool) -> bool:
        lo, hi = 0, rem
        if need_anchor and not anchored:
            if not suffix_anchor[start]:
                return False
            lo = 1
        mins, maxs = suffix_min[start], suffix_max[start]
        for k in range(dim):
            a, b = _k_window(target[k] - partial[k], mins[k], maxs[k], rem)
            lo, hi = max(lo, a), min(hi, b)
            if lo > hi:
                return False
        return True

    def walk(start: int, partial: tuple[int, ...], chosen: list[int], anchored: bool) -> None:
        if partial == target and (anchored or not need_anchor):
            found.append(Basket(tuple(states[i] for i in chosen)))
        rem = bounds.n_max - len(chosen) - 1
        if rem < 0:
            return
        for i in range(start, n):
            nxt = tuple(x + y for x, y in zip(partial, vectors[i]))
            now_anchored = anchored or states[i].r % m_o == 0
            if feasible(nxt, rem, i, now_anchored):
                chosen.append(i)
                walk(i, nxt, chosen, now_anchored)
                chosen.pop()

    walk(0, (0,) * dim, [], False)
    return sorted(set(found))


def is_prime(m: int) -> bool:
    return m >= 2 and all(m % d for d in range(2, int(m**0.5) + 1))


def _prime_factors(m: int) -> list[int]:
    return [d for d in range(2, m + 1) if m % d == 0 and is_prime(d)]


def _partitions(total: int, parts: Sequence[int], max_part: int | None = None):
    # multisets from ``parts`` summing to ``total``, non-increasing
    if total == 0:
        yield ()
        return
    for p in sorted(parts, reverse=True):
        if p <= total and (max_part is None or p <= max_part):
            for rest in _partitions(total - p, parts, p):
                yield (p,) + rest


def prime_index_multisets(m: int) -> list[tuple[int, ...]]:
    """Index multisets allowed at a prime level ``m`` by ``(m+1) sum r = 12 m``."""
    if not is_prime(m):
        raise ValueError(f"{m} is not prime")
    if (12 * m) % (m + 1):
        return []
    total = 12 * m // (m + 1)
    parts = [r for r in range(m, total + 1, m) if r >= 2]
    found = {tuple(sorted(p)) for p in _partitions(total, parts)}
    return sorted(found, key=lambda t: (len(t), t))


def _point_options(m: int, r: int) -> list[CycQuotPoint]:
    return [
        CycQuotPoint(r, b, q)
        for b in range(1, r // 2 + 1)
        if gcd(b, r) == 1
        for q in range(1, r)
        if (m * q) % r == 0
    ]


def prime_exclusion_check(m: int, index_multiset: Sequence[int]) -> bool:
    """True iff some choice of ``(b, q)`` per index solves the level-``m`` master system."""
    options = [_point_options(m, r) for r in index_multiset]
    seen = set()
    for combo in itertools.product(*options):
        basket = Basket(combo)
        if basket in seen:
            continue
        seen.add(basket)
        if not any(master_residuals(m, basket)):
            return True
    return False


def derived_basket(basket: Basket, alpha: int) -> Basket:
    """Basket of ``alpha F``: classes multiplied by ``alpha``, Cartier points dropped."""
    if alpha < 1:
        raise ValueError(f"alpha must be positive, got {alpha}")
    points = []
    for p in basket:
        q = smallest_residue(alpha * p.q, p.r)
        if q:
            points.append(CycQuotPoint(p.r, p.b, q))
    return Basket(tuple(points))


def subbasket_consistency(m_o: int, basket: Basket) -> bool:
    """Every prime-level derived basket is one of the surviving prime cases."""
    for p in _prime_factors(m_o):
        derived = derived_basket(basket, m_o // p)
        if derived.indices not in prime_index_multisets(p):
            return False
        if not prime_exclusion_check(p, derived.indices):
            return False
    return True


def k2_allowed(m_o: int, delta0: Fraction) -> tuple[int, ...]:
    """Degrees ``d`` in 1..9 with ``(d + 1)/m_o + delta0`` integral."""
    if m_o < 1:
        raise ValueError(f"m_o must be positive, got {m_o}")
    return tuple(d for d in K2_RANGE if (Fraction(d + 1, m_o) + delta0).denominator == 1)


def make_solution(m_o: int, basket: Basket) -> FiberSolution:
    delta0 = delta_a(basket, 0)
    return FiberSolution(
        m_o=m_o,
        basket=basket,
        regular=all(p.q == p.r - 1 for p in basket),
        delta0=delta0,
        k2_allowed=k2_allowed(m_o, delta0),
        index_multiset=basket.indices,
    )


def group_solutions(solutions: Iterable[FiberSolution]) -> tuple[SolutionGroup, ...]:
    by_type: dict[tuple[int, ...], list[FiberSolution]] = {}
    for s in solutions:
        by_type.setdefault(s.index_multiset, []).append(s)
    return tuple(
        SolutionGroup(indices, tuple(sorted(sols, key=lambda s: s.basket.sort_key())))
        for indices, sols in sorted(by_type.items())
    )


def _higher_delta_notes(solution: FiberSolution) -> list[str]:
    k2 = set(solution.k2_allowed)
    for a in range(1, solution.m_o - 1):
        k2 &= set(k2_allowed(solution.m_o, delta_a(solution.basket, a)))
    if k2 != set(solution.k2_allowed):
        return [
            f"basket {solution.basket}: integrality for a >= 1 would cut K^2 "
            f"from {sorted(solution.k2_allowed)} to {sorted(k2)}"
        ]
    return []


def obstruction_notes(m_o: int, bounds: SearchBounds = SearchBounds()) -> list[str]:
    """Closed-form reasons a multiplicity cannot occur, computed from the lemmas."""
    notes = []
    for p in _prime_factors(m_o):
        if (12 * p) % (p + 1):
            notes.append(
                f"prime factor {p}: (p+1)*sum(r) = 12p has no solution "
                f"since 12*{p}/{p + 1} is not an integer"
            )
        elif not any(prime_exclusion_check(p, t) for t in prime_index_multisets(p)):
            cases = ", ".join(str(t) for t in prime_index_multisets(p))
            notes.append(f"prime factor {p}: every candidate basket {cases} fails the master system")
    if notes or m_o < 7:
        return notes

    if m_o == 8:
        level4 = sorted({b.indices for b in search(4, bounds)})
        notes.append(
            f"m_o = 8: 2F has multiplicity 4, so B(2F) is one of {level4}; "
            "the anchor point has local index 8 and lies in B(2F), "
            "but no such basket has an index divisible by 8 (anchor condition fails)"
        )
    elif m_o == 9:
        xi1 = xi_closed(9, 1, 9)
        budget = Fraction(-(m_o - 1), 2)
        rest = (xi1 - budget) * 3
        notes.append(
            f"m_o = 9: B(3F) = (9) so the anchor point gives xi = {xi1}; every other point "
            f"has 3F Cartier and gives xi = 3*xi_3 = -r/3; the budget {budget} forces "
            f"sum of the other indices = {rest}, contradicting r = 0 mod 3"
        )
    else:
        max_index = max(
            max(t)
            for p in (2, 3, 5)
            for t in prime_index_multisets(p)
            if prime_exclusion_check(p, t)
        )
        d = _prime_factors(m_o)[0]
        notes.append(
            f"m_o = {m_o}: for D = {m_o // d}F (level {d}) the anchor point of index "
            f">= {m_o} lies in B(D), but prime-level baskets have indices <= {max_index}"
        )
    return notes


def classify(m_o: int, bounds: SearchBounds = SearchBounds()) -> ClassificationReport:
    """Search, decorate and group the baskets for multiplicity ``m_o``."""
    from dpfibers.goldens import diff_report

    solutions = [make_solution(m_o, b) for b in search(m_o, bounds)]
    notes = []
    for s in solutions:
        notes.extend(_higher_delta_notes(s))
    if not solutions:
        notes.extend(obstruction_notes(m_o, bounds))
    report = ClassificationReport(m_o, bounds, group_solutions(solutions), notes=tuple(notes))
    return ClassificationReport(
        m_o, bounds, report.groups, golden_status=diff_report(report), notes=report.notes
    )

