"""Exact classification of multiple fibers of terminal del Pezzo fibrations.

The package recomputes, with exact rational arithmetic, which baskets of
terminal cyclic quotient points can sit on a fiber of multiplicity ``m_o``,
together with the correction term ``delta0`` and the admissible degrees of a
general fiber.
"""

from dpfibers.arith import canonical_weight, format_rational, parse_rational, smallest_residue
from dpfibers.classifier import (
    ClassificationReport,
    FiberSolution,
    SearchBounds,
    classify,
    search,
)
from dpfibers.orbifold_rr import (
    Basket,
    CycQuotPoint,
    c_K,
    c_local,
    c_minus_K,
    delta_a,
    xi_closed,
    xi_direct,
)

__all__ = [
    "Basket",
    "ClassificationReport",
    "CycQuotPoint",
    "FiberSolution",
    "SearchBounds",
    "c_K",
    "c_local",
    "c_minus_K",
    "canonical_weight",
    "classify",
    "delta_a",
    "format_rational",
    "parse_rational",
    "search",
    "smallest_residue",
    "xi_closed",
    "xi_direct",
]

__version__ = "0.1.0"
