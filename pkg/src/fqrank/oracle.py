"""Ground-truth full-rank probability: exhaustive enumeration and Monte Carlo.

Both estimators split their work into fixed index ranges (odometer indices
for enumeration, trial indices for Monte Carlo) whose boundaries do not
depend on the number of workers, so results are identical for any
``workers`` value.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import kernels
from .gf import FieldSpec
from .pattern import SAMPLE_CHUNK, SupportPattern, sample_values

DEFAULT_BUDGET = 2**26
_RANGE = 1 << 16


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleResult:
    method: str  # "exact" | "monte_carlo"
    successes: int
    trials: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.successes, self.trials)

    @property
    def estimate(self) -> float:
        return self.successes / self.trials

    @property
    def stderr(self) -> float:
        if self.method == "exact":
            return 0.0
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials)

    @property
    def ratio(self) -> str:
        """Unreduced ``successes/trials``; for exact results the denominator is q^wt."""
        return f"{self.successes}/{self.trials}"

    def to_dict(self) -> dict:
        d = {"method": self.method, "successes": self.successes, "trials": self.trials,
             "value": self.ratio, "decimal": f"{self.estimate:.12g}"}
        if self.method == "monte_carlo":
            d["stderr"] = f"{self.stderr:.12g}"
        return d


def _oriented(b: SupportPattern) -> SupportPattern:
    return b.transpose() if b.rows > b.cols else b


def _run(tasks, workers: int) -> int:
    if workers <= 1 or len(tasks) <= 1:
        return sum(t() for t in tasks)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(lambda t: t(), tasks))


def exact_prob(b: SupportPattern, field: FieldSpec, budget: int = DEFAULT_BUDGET,
               workers: int = 1) -> OracleResult:
    """Count full-rank members of the support by enumerating all q^wt of them."""
    total = field.order ** b.weight()
    if total > budget:
        raise BudgetExceeded(
            f"exhaustive enumeration needs {field.order}^{b.weight()} = {total} realizations, "
            f"over the budget of {budget}; use Monte Carlo (mc_prob) instead")
    ob = _oriented(b)
    pos = ob.flat_positions()
    args = (ob.rows, ob.cols, pos, field.p, field.m, field.exp, field.log)
    tasks = [
        (lambda s=s: kernels.count_range(*args, s, min(total, s + _RANGE)))
        for s in range(0, total, _RANGE)
    ]
    return OracleResult("exact", _run(tasks, workers), total)


def mc_prob(b: SupportPattern, field: FieldSpec, trials: int, seed: int,
            workers: int = 1) -> OracleResult:
    """Full-rank fraction over ``trials`` draws from the counter-based ``seed`` stream."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ob = _oriented(b)
    transpose = ob is not b
    pos = ob.flat_positions()
    # sample in the original orientation so trial t matches pattern.sample(b, q, seed, t)
    if transpose:
        cells = b.positions()
        order = sorted(range(len(cells)), key=lambda w: (cells[w][1], cells[w][0]))
    else:
        order = None

    def chunk(start: int) -> int:
        vals = sample_values(b, field, seed, start, min(trials, start + SAMPLE_CHUNK) - start)
        if order is not None:
            vals = vals[:, order]
        return kernels.count_values(ob.rows, ob.cols, pos, vals, field.p, field.m, field.exp, field.log)

    tasks = [(lambda s=s: chunk(s)) for s in range(0, trials, SAMPLE_CHUNK)]
    return OracleResult("monte_carlo", _run(tasks, workers), trials)


def full_rank_prob(b: SupportPattern, field: FieldSpec, budget: int = DEFAULT_BUDGET,
                   trials: int = 10**5, seed: int = 1) -> OracleResult:
    """Exact when within budget, otherwise Monte Carlo."""
    try:
        return exact_prob(b, field, budget)
    except BudgetExceeded:
        return mc_prob(b, field, trials, seed)


def exact_prob_cached(cache: Optional[dict], b: SupportPattern, field: FieldSpec,
                      budget: int = DEFAULT_BUDGET) -> OracleResult:
    if cache is None:
        return exact_prob(b, field, budget)
    key = (b, field)
    if key not in cache:
        cache[key] = exact_prob(b, field, budget)
    return cache[key]
