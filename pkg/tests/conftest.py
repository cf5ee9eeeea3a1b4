"""Shared fixtures and brute-force oracles.

The oracles here deliberately avoid the package's elimination code: rank is
read off the size of the row span (q**rank vectors), found by enumerating
every linear combination of the rows.
"""

import itertools

import pytest

from fqrank import kernels

# GF(4) = GF(2)[x]/(x^2+x+1), elements 0,1,x,x+1 encoded 0,1,2,3
GF4_ADD = [[a ^ b for b in range(4)] for a in range(4)]
GF4_MUL = [
    [0, 0, 0, 0],
    [0, 1, 2, 3],
    [0, 2, 3, 1],
    [0, 3, 1, 2],
]


def _ops(q):
    if q == 4:
        return (lambda a, b: GF4_ADD[a][b]), (lambda a, b: GF4_MUL[a][b])
    return (lambda a, b: (a + b) % q), (lambda a, b: (a * b) % q)


def span_rank(rows, q):
    """Rank over GF(q), q prime or 4, via |row span| = q**rank."""
    add, mul = _ops(q)
    k = len(rows[0])
    span = set()
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        v = [0] * k
        for c, r in zip(coeffs, rows):
            if c:
                v = [add(x, mul(c, y)) for x, y in zip(v, r)]
        span.add(tuple(v))
    size, r = len(span), 0
    while q**r < size:
        r += 1
    assert q**r == size
    return r


def realizations(bits_rows, q):
    """Every matrix in the support of a 0/1 pattern given as a list of rows."""
    n, k = len(bits_rows), len(bits_rows[0])
    cells = [(i, j) for i in range(n) for j in range(k) if bits_rows[i][j]]
    for vals in itertools.product(range(q), repeat=len(cells)):
        m = [[0] * k for _ in range(n)]
        for (i, j), v in zip(cells, vals):
            m[i][j] = v
        yield m


def brute_full_rank_count(bits_rows, q):
    n, k = len(bits_rows), len(bits_rows[0])
    target = min(n, k)
    count = total = 0
    for m in realizations(bits_rows, q):
        total += 1
        rows = m if n <= k else [list(c) for c in zip(*m)]
        count += span_rank(rows, q) == target
    return count, total


def brute_has_full_rank(bits_rows, q):
    n, k = len(bits_rows), len(bits_rows[0])
    for m in realizations(bits_rows, q):
        rows = m if n <= k else [list(c) for c in zip(*m)]
        if span_rank(rows, q) == min(n, k):
            return True
    return False


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]
