"""Numpy implementation of the counting kernels (fallback for ``_ckernels``).

Both backends expose the same two functions with identical semantics:

``count_values(n, k, flat_pos, values, p, m, exp, log)``
    Number of full-rank matrices among ``values.shape[0]`` realizations.
    Row ``t`` of ``values`` fills the free cells ``flat_pos`` (row-major
    indices into an ``n x k`` matrix, ``n <= k``) of realization ``t``.

``count_range(n, k, flat_pos, p, m, exp, log, start, stop)``
    Same count over odometer indices ``[start, stop)`` of the exhaustive
    enumeration. Realization ``t`` gives free cell ``w`` (row-major order)
    the base-q digit of ``t`` at place ``wt - 1 - w``, so the last cell turns
    fastest.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"
_BATCH = 1 << 15


class _Arith:
    def __init__(self, p: int, m: int, exp: np.ndarray, log: np.ndarray):
        self.p, self.m, self.q = p, m, p**m
        self.exp = np.asarray(exp, dtype=np.int64)
        self.log = np.asarray(log, dtype=np.int64)

    def sub(self, a, b):
        p = self.p
        if p == 2:
            return a ^ b
        if self.m == 1:
            return (a - b) % p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.m):
            out += (((a // scale) % p - (b // scale) % p) % p) * scale
            scale *= p
        return out

    def mul(self, a, b):
        prod = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv(self, a):
        return np.where(a == 0, 0, self.exp[(self.q - 1) - self.log[a]])


def _count_batch(mats: np.ndarray, ar: _Arith) -> int:
    """mats: (T, n, k) with n <= k; counts matrices of full row rank."""
    T, n, k = mats.shape
    alive = np.ones(T, dtype=bool)
    pivots = np.empty((T, n, k), dtype=np.int64)
    pcols = np.empty((T, n), dtype=np.int64)
    idx = np.arange(T)
    for i in range(n):
        row = mats[:, i, :].copy()
        for j in range(i):
            f = row[idx, pcols[:, j]]
            row = ar.sub(row, ar.mul(f[:, None], pivots[:, j, :]))
        nz = row != 0
        alive &= nz.any(axis=1)
        pc = nz.argmax(axis=1)
        pcols[:, i] = pc
        pivots[:, i, :] = ar.mul(ar.inv(row[idx, pc])[:, None], row)
    return int(alive.sum())


def count_values(n, k, flat_pos, values, p, m, exp, log) -> int:
    values = np.asarray(values, dtype=np.int64)
    flat_pos = np.asarray(flat_pos, dtype=np.int64)
    ar = _Arith(p, m, exp, log)
    total = 0
    for s in range(0, values.shape[0], _BATCH):
        chunk = values[s : s + _BATCH]
        mats = np.zeros((chunk.shape[0], n * k), dtype=np.int64)
        mats[:, flat_pos] = chunk
        total += _count_batch(mats.reshape(-1, n, k), ar)
    return total


def count_range(n, k, flat_pos, p, m, exp, log, start, stop) -> int:
    flat_pos = np.asarray(flat_pos, dtype=np.int64)
    wt = flat_pos.shape[0]
    q = p**m
    places = q ** np.arange(wt - 1, -1, -1, dtype=np.int64)
    total = 0
    for s in range(start, stop, _BATCH):
        t = np.arange(s, min(stop, s + _BATCH), dtype=np.int64)
        values = (t[:, None] // places[None, :]) % q
        total += count_values(n, k, flat_pos, values, p, m, exp, log)
    return total
