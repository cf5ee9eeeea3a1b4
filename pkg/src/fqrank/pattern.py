"""Support patterns: which entries of a random matrix are free and which are zero.

A :class:`SupportPattern` is an ``n x k`` binary matrix packed row-major into a
Python int (bit ``i*k + j`` is entry ``(i, j)``). Free entries of a sampled
matrix are uniform over GF(q); the others are identically zero.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

import numpy as np

from .gf import FieldSpec
from .matching import max_matching
from .matrix import FqMatrix

MAX_SUPPORT_SIZE = 2**63 - 1
SAMPLE_CHUNK = 1 << 14


class PatternError(ValueError):
    pass


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class SupportPattern:
    rows: int
    cols: int
    bits: int = 0

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise PatternError(f"pattern dimensions must be positive, got {self.rows}x{self.cols}")
        if self.bits < 0 or self.bits >> (self.rows * self.cols):
            raise PatternError("bit storage exceeds n*k")

    # construction

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> SupportPattern:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise PatternError("pattern must have at least one row and column")
        k = len(rows[0])
        if any(len(r) != k for r in rows):
            raise PatternError("ragged rows")
        bits = 0
        for i, r in enumerate(rows):
            for j, v in enumerate(r):
                if v not in (0, 1, True, False):
                    raise PatternError(f"pattern entries must be 0/1, got {v!r}")
                if v:
                    bits |= 1 << (i * k + j)
        return cls(len(rows), k, bits)

    @classmethod
    def from_positions(cls, n: int, k: int, positions: Iterable[tuple[int, int]]) -> SupportPattern:
        bits = 0
        for i, j in positions:
            if not (0 <= i < n and 0 <= j < k):
                raise PatternError(f"position {(i, j)} outside {n}x{k}")
            bits |= 1 << (i * k + j)
        return cls(n, k, bits)

    @classmethod
    def full(cls, n: int, k: int) -> SupportPattern:
        return cls(n, k, (1 << (n * k)) - 1)

    @classmethod
    def zeros(cls, n: int, k: int) -> SupportPattern:
        return cls(n, k, 0)

    @classmethod
    def identity(cls, n: int) -> SupportPattern:
        return cls.from_positions(n, n, ((i, i) for i in range(n)))

    @classmethod
    def block_diagonal(cls, blocks: Sequence[tuple[int, int]], n: int | None = None,
                       k: int | None = None) -> SupportPattern:
        """diag(1^{n1 x k1}, ...), padded with zero rows/columns up to n x k."""
        sn = sum(b[0] for b in blocks)
        sk = sum(b[1] for b in blocks)
        n = sn if n is None else n
        k = sk if k is None else k
        if sn > n or sk > k:
            raise PatternError("blocks do not fit in the requested dimensions")
        pos = []
        r0 = c0 = 0
        for bn, bk in blocks:
            pos += [(r0 + i, c0 + j) for i in range(bn) for j in range(bk)]
            r0 += bn
            c0 += bk
        return cls.from_positions(n, k, pos)

    # queries

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"position {(i, j)} outside {self.rows}x{self.cols}")
        return (self.bits >> (i * self.cols + j)) & 1

    def weight(self) -> int:
        return bin(self.bits).count("1")

    def positions(self) -> list[tuple[int, int]]:
        """Free positions in row-major order."""
        k = self.cols
        out = []
        b, idx = self.bits, 0
        while b:
            if b & 1:
                out.append(divmod(idx, k))
            b >>= 1
            idx += 1
        return out

    def flat_positions(self) -> np.ndarray:
        return np.array([i * self.cols + j for i, j in self.positions()], dtype=np.int64)

    def row_mask(self, i: int) -> int:
        return (self.bits >> (i * self.cols)) & ((1 << self.cols) - 1)

    def adjacency(self) -> list[list[int]]:
        """Columns adjacent to each row, ascending."""
        return [[j for j in range(self.cols) if (self.row_mask(i) >> j) & 1] for i in range(self.rows)]

    def row_list(self) -> list[list[int]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def transpose(self) -> SupportPattern:
        return SupportPattern.from_positions(self.cols, self.rows, ((j, i) for i, j in self.positions()))

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> SupportPattern:
        """Result[i, j] = self[row_perm[i], col_perm[j]]."""
        _check_perm(row_perm, self.rows, "row")
        _check_perm(col_perm, self.cols, "column")
        rinv = {r: i for i, r in enumerate(row_perm)}
        cinv = {c: j for j, c in enumerate(col_perm)}
        return SupportPattern.from_positions(self.rows, self.cols,
                                             ((rinv[i], cinv[j]) for i, j in self.positions()))

    def has_zero_row(self) -> bool:
        return any(self.row_mask(i) == 0 for i in range(self.rows))

    def support_size(self, field: FieldSpec) -> int:
        return support_size(self, field)

    def to_text(self) -> str:
        lines = [f"n={self.rows} k={self.cols}"]
        lines += ["".join(str(v) for v in row) for row in self.row_list()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> SupportPattern:
        """Optional ``n=<n> k=<k>`` header, then one row of 0/1 per line."""
        lines = [ln for ln in (raw.split("#", 1)[0].strip() for raw in text.splitlines()) if ln]
        n = k = None
        if lines and "=" in lines[0]:
            head = dict(re.findall(r"(\w+)\s*=\s*(\d+)", lines[0]))
            if not {"n", "k"} <= head.keys():
                raise PatternError(f"bad pattern header {lines[0]!r}")
            n, k = int(head["n"]), int(head["k"])
            lines = lines[1:]
        rows = []
        for ln in lines:
            chars = re.sub(r"\s+", "", ln)
            if not set(chars) <= {"0", "1"}:
                raise PatternError(f"pattern rows may contain only 0 and 1: {ln!r}")
            rows.append([int(c) for c in chars])
        if not rows:
            raise PatternError("pattern has no rows")
        if n is not None and (len(rows) != n or any(len(r) != k for r in rows)):
            raise PatternError(f"pattern body does not match header n={n} k={k}")
        return cls.from_rows(rows)

    def __str__(self) -> str:
        return "/".join("".join(str(v) for v in row) for row in self.row_list())


def _check_perm(perm: Sequence[int], size: int, what: str) -> None:
    if len(perm) != size or sorted(perm) != list(range(size)):
        raise PatternError(f"{what} permutation {list(perm)} is not a permutation of {size}")


def all_patterns(n: int, k: int) -> Iterator[SupportPattern]:
    for bits in range(1 << (n * k)):
        yield SupportPattern(n, k, bits)


# -- operations --------------------------------------------------------------

def weight(b: SupportPattern) -> int:
    return b.weight()


def support_size(b: SupportPattern, field: FieldSpec) -> int:
    size = field.order ** b.weight()
    if size > MAX_SUPPORT_SIZE:
        raise OverflowError(f"support size {field.order}^{b.weight()} exceeds the 63-bit guard")
    return size


def _same_shape(a: SupportPattern, b: SupportPattern) -> None:
    if a.shape != b.shape:
        raise PatternError(f"dimension mismatch: {a.shape} vs {b.shape}")


def precedes_eq(a: SupportPattern, b: SupportPattern) -> bool:
    """Every zero of ``b`` is a zero of ``a``."""
    _same_shape(a, b)
    return a.bits & ~b.bits == 0


def precedes(a: SupportPattern, b: SupportPattern) -> bool:
    """Strict order: the support of ``a`` is a proper subset of that of ``b``."""
    return precedes_eq(a, b) and a.bits != b.bits


def zero_element(b: SupportPattern, i: int, j: int) -> SupportPattern:
    if not b[i, j]:
        raise PatternError(f"position {(i, j)} is already zero")
    return SupportPattern(b.rows, b.cols, b.bits & ~(1 << (i * b.cols + j)))


def has_full_rank_realization(b: SupportPattern) -> bool:
    """Some member of the support has rank min(n, k).

    Holds iff the row/column incidence graph of ``b`` has a matching of size
    min(n, k): put nonzeros on the matched cells and zeros elsewhere.
    """
    adj = b.adjacency()
    if b.rows <= b.cols:
        return all(j != -1 for j in max_matching(adj, b.cols))
    return sum(j != -1 for j in max_matching(adj, b.cols)) == b.cols


def _stream(seed: int, chunk: int) -> np.random.Generator:
    # counter-based: chunk c owns the Philox counter block starting at c << 128
    return np.random.Generator(np.random.Philox(key=int(seed) % (1 << 128), counter=int(chunk) << 128))


def sample_values(b: SupportPattern, field: FieldSpec, seed: int, start: int, count: int) -> np.ndarray:
    """Free-entry values for trials ``start .. start+count-1`` of a seed stream.

    Shape ``(count, weight)``, columns in row-major position order. Trial ``t``
    depends only on ``(seed, t)``, so any partition of a trial range yields
    the same values.
    """
    wt = b.weight()
    out = np.empty((count, wt), dtype=np.int64)
    t = start
    end = start + count
    while t < end:
        chunk, off = divmod(t, SAMPLE_CHUNK)
        stop = min(SAMPLE_CHUNK, off + (end - t))
        block = _stream(seed, chunk).integers(0, field.order, size=(stop, wt), dtype=np.int64)
        out[t - start : t - start + stop - off] = block[off:]
        t += stop - off
    return out


def sample(b: SupportPattern, field: FieldSpec, seed: int, index: int = 0) -> FqMatrix:
    """Trial ``index`` of the ``seed`` stream as a matrix drawn from U(b, q)."""
    vals = sample_values(b, field, seed, index, 1)[0]
    entries = [0] * (b.rows * b.cols)
    for (i, j), v in zip(b.positions(), vals):
        entries[i * b.cols + j] = int(v)
    return FqMatrix(field, b.rows, b.cols, tuple(entries))


# -- block structures --------------------------------------------------------

@dataclass(frozen=True)
class BlockStructure:
    """Permutations + zeroing that turn a pattern into diag(1^{n1 x k1}, ...).

    ``row_perm``/``col_perm`` index the oriented pattern (the transpose when
    ``transposed`` is set) and follow ``result[i, j] = src[row_perm[i],
    col_perm[j]]``. ``zeroed`` lists positions in the coordinates of the
    original, un-transposed pattern.
    """

    row_perm: tuple[int, ...]
    col_perm: tuple[int, ...]
    blocks: tuple[tuple[int, int], ...]
    zeroed: tuple[tuple[int, int], ...] = ()
    transposed: bool = False

    @property
    def n(self) -> int:
        return len(self.row_perm)

    @property
    def k(self) -> int:
        return len(self.col_perm)

    def check_invariants(self) -> None:
        _check_perm(self.row_perm, self.n, "row")
        _check_perm(self.col_perm, self.k, "column")
        if not self.blocks:
            raise StructureError("structure has no blocks")
        for bn, bk in self.blocks:
            if bn < 1 or bk < 1:
                raise StructureError(f"block ({bn},{bk}) has a non-positive dimension")
            if bn > bk:
                raise StructureError(f"block ({bn},{bk}) violates n_l <= k_l")
        if sum(b[0] for b in self.blocks) != self.n:
            raise StructureError(f"block rows sum to {sum(b[0] for b in self.blocks)}, need {self.n}")
        if sum(b[1] for b in self.blocks) > self.k:
            raise StructureError("block columns exceed the column count")

    def block_rows(self) -> list[list[int]]:
        """Oriented row indices of each block."""
        cuts = [0, *accumulate(b[0] for b in self.blocks)]
        return [list(self.row_perm[cuts[i]:cuts[i + 1]]) for i in range(len(self.blocks))]

    def block_cols(self) -> list[list[int]]:
        cuts = [0, *accumulate(b[1] for b in self.blocks)]
        return [list(self.col_perm[cuts[i]:cuts[i + 1]]) for i in range(len(self.blocks))]

    def to_dict(self) -> dict:
        return {
            "row_perm": list(self.row_perm),
            "col_perm": list(self.col_perm),
            "blocks": [list(b) for b in self.blocks],
            "zeroed": [list(z) for z in self.zeroed],
            "transposed": self.transposed,
        }

    @classmethod
    def from_dict(cls, d: dict) -> BlockStructure:
        return cls(
            tuple(d["row_perm"]),
            tuple(d["col_perm"]),
            tuple(tuple(b) for b in d["blocks"]),
            tuple(tuple(z) for z in d.get("zeroed", ())),
            bool(d.get("transposed", False)),
        )


def apply_structure(b: SupportPattern, s: BlockStructure) -> SupportPattern:
    """Zero, orient and permute ``b`` per ``s``; the result must be exactly block diagonal."""
    s.check_invariants()
    on, ok = (b.cols, b.rows) if s.transposed else (b.rows, b.cols)
    if (s.n, s.k) != (on, ok):
        raise StructureError(f"structure is {s.n}x{s.k} but the oriented pattern is {on}x{ok}")
    if len(set(s.zeroed)) != len(s.zeroed):
        raise StructureError("structure zeroes a position twice")
    zeroed = b
    for i, j in s.zeroed:
        if not (0 <= i < b.rows and 0 <= j < b.cols) or not zeroed[i, j]:
            raise StructureError(f"structure zeroes position {(i, j)}, which is not free in the pattern")
        zeroed = zero_element(zeroed, i, j)
    assert precedes_eq(zeroed, b)
    oriented = zeroed.transpose() if s.transposed else zeroed
    result = oriented.permute(s.row_perm, s.col_perm)
    if result != SupportPattern.block_diagonal(s.blocks, on, ok):
        raise StructureError("permuted and zeroed pattern is not the stated block-diagonal form")
    return result
