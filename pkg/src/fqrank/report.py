"""BoundReport: every bound for one pattern, plus an optional oracle value."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import BoundInapplicable, block_diag_bound, ho_bound, upper_bound
from .diagonalize import ALGORITHMS
from .gf import FieldSpec
from .oracle import DEFAULT_BUDGET, BudgetExceeded, OracleResult, exact_prob, mc_prob
from .pattern import BlockStructure, SupportPattern

INAPPLICABLE = "inapplicable"


def fmt_ratio(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def fmt_decimal(x) -> str:
    return f"{float(x):.12g}"


@dataclass
class BoundReport:
    field: FieldSpec
    pattern: SupportPattern
    ho_bound: Optional[Fraction]
    upper_bound: Fraction
    structures: dict[str, BlockStructure] = field(default_factory=dict)
    block_bounds: dict[str, Fraction] = field(default_factory=dict)
    oracle: Optional[OracleResult] = None

    @property
    def transposed(self) -> bool:
        return self.pattern.rows > self.pattern.cols

    def check(self) -> list[str]:
        """Violated orderings, empty when consistent; only meaningful with an exact oracle."""
        out = []
        if self.oracle is None or self.oracle.method != "exact":
            return out
        exact = self.oracle.value
        if self.ho_bound is not None and not self.ho_bound <= exact:
            out.append(f"ho_bound {fmt_ratio(self.ho_bound)} > exact {self.oracle.ratio}")
        if not exact <= self.upper_bound:
            out.append(f"exact {self.oracle.ratio} > upper_bound {fmt_ratio(self.upper_bound)}")
        for name, v in self.block_bounds.items():
            if not v <= exact:
                out.append(f"block_bound.{name} {fmt_ratio(v)} > exact {self.oracle.ratio}")
        return out

    def to_dict(self) -> dict:
        b = self.pattern
        d = {
            "field": self.field.designation,
            "n": b.rows,
            "k": b.cols,
            "weight": b.weight(),
            "pattern": str(b),
            "orientation": "transposed" if self.transposed else "as-given",
            "upper_bound": fmt_ratio(self.upper_bound),
            "upper_bound_decimal": fmt_decimal(self.upper_bound),
        }
        if self.ho_bound is None:
            d["ho_bound"] = INAPPLICABLE
        else:
            d["ho_bound"] = fmt_ratio(self.ho_bound)
            d["ho_bound_decimal"] = fmt_decimal(self.ho_bound)
        for name in sorted(self.block_bounds):
            d[f"block_bound.{name}"] = fmt_ratio(self.block_bounds[name])
            d[f"block_bound.{name}_decimal"] = fmt_decimal(self.block_bounds[name])
            d[f"structure.{name}"] = self.structures[name].to_dict()
        if self.oracle is not None:
            d["oracle"] = self.oracle.to_dict()
        return d


def build_report(b: SupportPattern, field: FieldSpec, algorithms=("single", "parallel"),
                 oracle: str = "auto", budget: int = DEFAULT_BUDGET, trials: int = 10**5,
                 seed: int = 1) -> BoundReport:
    """Compute all bounds; ``oracle`` is one of auto, exact, mc, none.

    ``auto`` attaches the exact value when the support fits in ``budget`` and
    nothing otherwise. Raises PreconditionError from the diagonalizers when
    the pattern has no full-rank realization and any algorithm is requested.
    """
    try:
        ho = ho_bound(b, field)
    except BoundInapplicable:
        ho = None
    rep = BoundReport(field, b, ho, upper_bound(b, field))
    for name in algorithms:
        s = ALGORITHMS[name](b, field)
        rep.structures[name] = s
        rep.block_bounds[name] = block_diag_bound(s, field)
    if oracle == "exact":
        rep.oracle = exact_prob(b, field, budget)
    elif oracle == "mc":
        rep.oracle = mc_prob(b, field, trials, seed)
    elif oracle == "auto":
        try:
            rep.oracle = exact_prob(b, field, budget)
        except BudgetExceeded:
            rep.oracle = None
    elif oracle != "none":
        raise ValueError(f"unknown oracle mode {oracle!r}")
    return rep
