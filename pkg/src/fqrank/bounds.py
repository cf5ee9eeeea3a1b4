"""Closed-form full-rank probabilities and bounds, as exact Fractions.

Every value here is a product of factors ``1 - q**-i``; such products never
reduce, so their denominators are powers of q.
"""

from __future__ import annotations

from fractions import Fraction

from .gf import FieldSpec
from .pattern import BlockStructure, StructureError, SupportPattern, has_full_rank_realization


class BoundInapplicable(ValueError):
    """The pattern admits no full-rank realization, so the lower bound has no hypothesis."""


def _factor(q: int, i: int) -> Fraction:
    return 1 - Fraction(1, q**i)


def full_weight_prob(n: int, k: int, field: FieldSpec) -> Fraction:
    """P(rank = min(n, k)) for an n x k matrix with every entry uniform.

    prod_{i=a-b+1}^{a} (1 - q^-i) with a = max(n, k), b = min(n, k).
    """
    if n < 1 or k < 1:
        raise ValueError(f"dimensions must be positive, got {n}x{k}")
    a, b = max(n, k), min(n, k)
    out = Fraction(1)
    for i in range(a - b + 1, a + 1):
        out *= _factor(field.order, i)
    return out


def floor_bound(n: int, field: FieldSpec) -> Fraction:
    """(1 - 1/q)^n."""
    return _factor(field.order, 1) ** n


def ho_bound(b: SupportPattern, field: FieldSpec) -> Fraction:
    """(1 - 1/q)^min(n, k), valid whenever a full-rank realization exists.

    For rectangular patterns the exponent min(n, k) comes from applying the
    square bound to a min(n, k) square submatrix picked out by a maximum
    matching.
    """
    if not has_full_rank_realization(b):
        raise BoundInapplicable("no full-rank realization: every matrix in the support is rank deficient")
    return floor_bound(min(b.rows, b.cols), field)


def block_diag_bound(s: BlockStructure, field: FieldSpec) -> Fraction:
    """Exact P_FR of diag(1^{n1 x k1}, ...): prod over blocks of prod_{i=k-n+1}^{k} (1 - q^-i)."""
    try:
        s.check_invariants()
    except ValueError as exc:
        raise StructureError(str(exc)) from exc
    out = Fraction(1)
    for bn, bk in s.blocks:
        for i in range(bk - bn + 1, bk + 1):
            out *= _factor(field.order, i)
    assert out >= floor_bound(s.n, field)
    return out


def upper_bound(b: SupportPattern, field: FieldSpec) -> Fraction:
    """P_FR of the full-weight pattern of the same shape; the structure of b is irrelevant."""
    return full_weight_prob(b.rows, b.cols, field)
