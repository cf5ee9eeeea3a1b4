import itertools
import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import brute_full_rank_count
from fqrank.gf import GF
from fqrank.matrix import is_full_rank
from fqrank.oracle import BudgetExceeded, OracleResult, exact_prob, full_rank_prob, mc_prob
from fqrank.pattern import SupportPattern, all_patterns, sample, zero_element


@st.composite
def small_patterns(draw, max_cells=8):
    n = draw(st.integers(1, 4))
    k = draw(st.integers(1, max(1, min(4, max_cells // n))))
    return SupportPattern(n, k, draw(st.integers(0, (1 << (n * k)) - 1)))


def test_exact_examples():
    F2 = GF(2)
    r = exact_prob(SupportPattern.full(2, 2), F2)
    assert (r.successes, r.trials, r.ratio) == (6, 16, "6/16")
    assert r.value == Fraction(3, 8) and r.stderr == 0
    assert exact_prob(SupportPattern.identity(3), F2).value == Fraction(1, 8)
    r = exact_prob(SupportPattern.full(3, 3), F2)
    assert (r.successes, r.trials) == (168, 512)


def test_exact_zero_pattern():
    r = exact_prob(SupportPattern.zeros(2, 2), GF(5))
    assert (r.successes, r.trials) == (0, 1)


def test_budget_refusal():
    with pytest.raises(BudgetExceeded, match="budget"):
        exact_prob(SupportPattern.full(3, 3), GF(3), budget=3**9 - 1)
    assert exact_prob(SupportPattern.full(3, 3), GF(3), budget=3**9).trials == 3**9


def test_full_rank_prob_falls_back_to_mc():
    r = full_rank_prob(SupportPattern.full(3, 3), GF(2), budget=100, trials=1000, seed=3)
    assert r.method == "monte_carlo" and r.trials == 1000
    assert full_rank_prob(SupportPattern.full(2, 2), GF(2)).method == "exact"


@pytest.mark.parametrize("q", [2, 3, 4])
def test_exact_matches_brute_force(backend, q):
    rng = random.Random(q)
    for _ in range(25):
        n, k = rng.randint(1, 3), rng.randint(1, 3)
        rows = [[rng.randint(0, 1) for _ in range(k)] for _ in range(n)]
        if q ** sum(map(sum, rows)) > 5000:
            continue
        b = SupportPattern.from_rows(rows)
        c, t = brute_full_rank_count(rows, q)
        F = GF(q)
        ob = b.transpose() if n > k else b
        got = backend.count_range(ob.rows, ob.cols, ob.flat_positions(), F.p, F.m, F.exp, F.log, 0, t)
        assert got == c, rows
        assert exact_prob(b, F).successes == c


@pytest.mark.parametrize("q", [2, 3, 8, 9])
def test_backends_agree(q):
    from fqrank.kernels import available_backends
    F = GF(q)
    b = SupportPattern.from_rows([[1, 1, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1]])
    rng = np.random.default_rng(q)
    vals = rng.integers(0, q, size=(3000, b.weight()), dtype=np.int64)
    counts = {name: be.count_values(3, 4, b.flat_positions(), vals, F.p, F.m, F.exp, F.log)
              for name, be in available_backends().items()}
    assert len(set(counts.values())) == 1
    # and against the matrix module, one sample at a time
    expected = 0
    for row in vals[:300]:
        ent = [0] * 12
        for pos, v in zip(b.flat_positions(), row):
            ent[pos] = int(v)
        from fqrank.matrix import FqMatrix
        expected += is_full_rank(FqMatrix(F, 3, 4, tuple(ent)))
    for be in available_backends().values():
        assert be.count_values(3, 4, b.flat_positions(), vals[:300], F.p, F.m, F.exp, F.log) == expected


def test_exact_independent_of_workers():
    b = SupportPattern.full(3, 3)
    F = GF(3)
    assert exact_prob(b, F, workers=1) == exact_prob(b, F, workers=4)


def test_mc_all_zero():
    r = mc_prob(SupportPattern.zeros(2, 2), GF(2), trials=1000, seed=1)
    assert r.estimate == 0 and r.stderr == 0


def test_mc_seed_determinism_and_workers():
    b = SupportPattern.full(3, 3)
    F = GF(2)
    a = mc_prob(b, F, 50000, seed=9)
    assert a == mc_prob(b, F, 50000, seed=9)
    assert a == mc_prob(b, F, 50000, seed=9, workers=3)
    assert a != mc_prob(b, F, 50000, seed=10)


def test_mc_trials_match_sample():
    # trial t of mc_prob is the matrix pattern.sample(b, q, seed, t), in both orientations
    F = GF(3)
    for b in [SupportPattern.from_rows([[1, 1, 0], [0, 1, 1]]), SupportPattern.from_rows([[1, 0], [1, 1], [0, 1]])]:
        full = sum(is_full_rank(sample(b, F, 21, t)) for t in range(200))
        assert mc_prob(b, F, 200, seed=21).successes == full


def test_mc_full_1x1_within_three_sigma():
    r = mc_prob(SupportPattern.full(1, 1), GF(2), 10**6, seed=12345)
    assert abs(r.estimate - 0.5) <= 3 * math.sqrt(0.25 / 10**6)


def test_mc_gf256():
    F = GF(256)
    b = SupportPattern.full(4, 4)
    r = mc_prob(b, F, 20000, seed=1)
    p = 1.0
    for i in range(1, 5):
        p *= 1 - 256.0**-i
    assert abs(r.estimate - p) <= 4 * math.sqrt(p * (1 - p) / 20000) + 1e-9


def test_result_serialization():
    r = OracleResult("exact", 6, 16)
    d = r.to_dict()
    assert d["value"] == "6/16" and d["method"] == "exact" and "stderr" not in d


@pytest.mark.parametrize("q", [2, 3])
def test_monotone_under_zeroing_2x2(q):
    F = GF(q)
    for b in all_patterns(2, 2):
        pb = exact_prob(b, F).value
        for i, j in b.positions():
            assert exact_prob(zero_element(b, i, j), F).value <= pb


def test_monotone_under_zeroing_3x3_sampled():
    F = GF(3)
    rng = random.Random(7)
    for _ in range(30):
        b = SupportPattern(3, 3, rng.getrandbits(9))
        pb = exact_prob(b, F).value
        for i, j in b.positions():
            assert exact_prob(zero_element(b, i, j), F).value <= pb


@settings(max_examples=60, deadline=None)
@given(small_patterns(), st.sampled_from([2, 3]), st.data())
def test_exact_invariant_under_permutation_and_transpose(b, q, data):
    F = GF(q)
    v = exact_prob(b, F).value
    rp = data.draw(st.permutations(range(b.rows)))
    cp = data.draw(st.permutations(range(b.cols)))
    assert exact_prob(b.permute(rp, cp), F).value == v
    assert exact_prob(b.transpose(), F).value == v
    assert 0 <= v <= 1


def test_all_2x2_values_at_q2():
    # every 2x2 support, exact against brute force
    for bits in itertools.product([0, 1], repeat=4):
        rows = [list(bits[:2]), list(bits[2:])]
        c, t = brute_full_rank_count(rows, 2)
        assert exact_prob(SupportPattern.from_rows(rows), GF(2)).value == Fraction(c, t)


def test_zero_weight_on_every_backend(backend):
    F = GF(2)
    vals = np.zeros((5, 0), dtype=np.int64)
    assert backend.count_values(2, 2, [], vals, F.p, F.m, F.exp, F.log) == 0
    assert backend.count_values(1, 1, [], np.zeros((0, 0), dtype=np.int64), F.p, F.m, F.exp, F.log) == 0
    assert backend.count_range(2, 2, [], F.p, F.m, F.exp, F.log, 0, 1) == 0
