"""Exhaustive checks of the bounds against the enumeration oracle.

For every pattern of the requested sizes and every field:

* ``realizable``  matching criterion agrees with "exact P_FR > 0"
* ``full_weight`` exact P_FR of the all-ones pattern equals the closed form
* ``upper``       exact <= upper bound
* ``ho``          Ho bound <= exact (realizable patterns)
* ``block.<alg>`` block-diagonal bound <= exact
* ``floor.<alg>`` block-diagonal bound >= (1 - 1/q)^n
* ``valid.<alg>`` the structure passes :func:`verify_structure`
* ``monotone``    zeroing any one free entry never raises exact P_FR
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .bounds import block_diag_bound, floor_bound, full_weight_prob, ho_bound, upper_bound
from .diagonalize import ALGORITHMS, verify_structure
from .gf import FieldSpec
from .oracle import DEFAULT_BUDGET, BudgetExceeded, exact_prob
from .pattern import BlockStructure, SupportPattern, all_patterns, has_full_rank_realization, zero_element
from .report import fmt_ratio

BoundFn = Callable[[BlockStructure, FieldSpec], Fraction]


@dataclass
class VerifySummary:
    patterns: int = 0
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(self.failed.values())

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def record(self, suite: str, ok: bool, **detail) -> None:
        if ok:
            self.passed[suite] += 1
        else:
            self.failed[suite] += 1
            self.counterexamples.append({"suite": suite, **detail})

    def to_dict(self) -> dict:
        suites = sorted(set(self.passed) | set(self.failed))
        return {
            "patterns": self.patterns,
            "failures": self.failures,
            "suites": {s: {"passed": self.passed[s], "failed": self.failed[s]} for s in suites},
            "counterexamples": self.counterexamples,
        }


def verify_sweep(sizes: Iterable[tuple[int, int]], fields: Sequence[FieldSpec],
                 algorithms: Sequence[str] = ("single", "parallel"),
                 budget: int = DEFAULT_BUDGET, bound: BoundFn = block_diag_bound) -> VerifySummary:
    """Run every suite over all patterns of each size. ``bound`` is a test hook."""
    sizes = list(sizes)
    for n, k in sizes:
        for f in fields:
            if f.order ** (n * k) > budget:
                raise BudgetExceeded(f"{n}x{k} over GF({f.order}) needs {f.order}^{n * k} realizations, "
                                     f"over the budget of {budget}")
    summary = VerifySummary()
    for n, k in sizes:
        pats = list(all_patterns(n, k))
        summary.patterns += len(pats)
        for f in fields:
            exact = {b.bits: exact_prob(b, f, budget) for b in pats}
            for b in pats:
                _check_pattern(summary, b, f, exact, algorithms, bound)
    return summary


def _check_pattern(summary: VerifySummary, b: SupportPattern, f: FieldSpec, exact: dict,
                   algorithms, bound: BoundFn) -> None:
    where = {"field": f.designation, "pattern": b.to_text().rstrip("\n")}
    ex = exact[b.bits].value
    realizable = has_full_rank_realization(b)
    summary.record("realizable", realizable == (ex > 0), **where,
                   detail=f"matching says {realizable}, exact P_FR = {exact[b.bits].ratio}")
    if b.weight() == b.rows * b.cols:
        fw = full_weight_prob(b.rows, b.cols, f)
        summary.record("full_weight", ex == fw, **where, detail=f"exact {ex} != closed form {fw}")
    up = upper_bound(b, f)
    summary.record("upper", ex <= up, **where, detail=f"exact {ex} > upper {fmt_ratio(up)}")
    if realizable:
        ho = ho_bound(b, f)
        summary.record("ho", ho <= ex, **where, detail=f"ho {fmt_ratio(ho)} > exact {ex}")
        for alg in algorithms:
            s = ALGORITHMS[alg](b, f)
            summary.record(f"valid.{alg}", verify_structure(b, s), **where, detail=f"invalid structure {s.to_dict()}")
            v = bound(s, f)
            summary.record(f"block.{alg}", v <= ex, **where,
                           detail=f"block bound {fmt_ratio(v)} > exact {exact[b.bits].ratio}")
            fl = floor_bound(s.n, f)
            summary.record(f"floor.{alg}", v >= fl, **where,
                           detail=f"block bound {fmt_ratio(v)} < floor {fmt_ratio(fl)}")
    for i, j in b.positions():
        a = zero_element(b, i, j)
        ea = exact[a.bits].value
        summary.record("monotone", ea <= ex, **where,
                       detail=f"zeroing {(i, j)} raises P_FR from {exact[b.bits].ratio} to {exact[a.bits].ratio}")
