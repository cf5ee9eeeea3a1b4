"""Dense matrices over GF(q) with exact rank."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gf import FieldError, FieldSpec, parse_field


class MatrixError(ValueError):
    pass


def rank_rows(field: FieldSpec, rows: Sequence[Sequence[int]]) -> int:
    """Rank of a list of rows by Gaussian elimination (first-nonzero pivot).

    Works on a copy; ``rows`` is left untouched.
    """
    work = [list(r) for r in rows]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(work)):
            if work[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        prow = work[rank]
        pinv = field.inv(prow[col])
        for r in range(rank + 1, len(work)):
            row = work[r]
            if row[col]:
                f = field.mul(row[col], pinv)
                for c in range(col, ncols):
                    if prow[c]:
                        row[c] = field.sub(row[c], field.mul(f, prow[c]))
        rank += 1
        if rank == len(work):
            break
    return rank


def _check_perm(perm: Sequence[int], size: int, what: str) -> tuple[int, ...]:
    perm = tuple(int(x) for x in perm)
    if len(perm) != size or sorted(perm) != list(range(size)):
        raise MatrixError(f"{what} permutation {list(perm)} is not a permutation of {size}")
    return perm


@dataclass(frozen=True)
class FqMatrix:
    field: FieldSpec
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise MatrixError(f"matrix dimensions must be positive, got {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise MatrixError("entry count does not match dimensions")
        q = self.field.order
        for v in self.entries:
            if not 0 <= v < q:
                raise MatrixError(f"entry {v} is not an element of GF({q})")

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Iterable[Sequence[int]]) -> FqMatrix:
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise MatrixError("matrix must have at least one row and column")
        k = len(rows[0])
        if any(len(r) != k for r in rows):
            raise MatrixError("ragged rows")
        return cls(field, len(rows), k, tuple(int(v) for r in rows for v in r))

    @classmethod
    def zeros(cls, field: FieldSpec, n: int, k: int) -> FqMatrix:
        return cls(field, n, k, (0,) * (n * k))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> FqMatrix:
        return cls(field, n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row_list(self) -> list[list[int]]:
        k = self.cols
        return [list(self.entries[i * k : (i + 1) * k]) for i in range(self.rows)]

    def transpose(self) -> FqMatrix:
        n, k = self.rows, self.cols
        return FqMatrix(self.field, k, n, tuple(self.entries[i * k + j] for j in range(k) for i in range(n)))

    def permute(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> FqMatrix:
        """Result[i, j] = self[row_perm[i], col_perm[j]]."""
        rp = _check_perm(row_perm, self.rows, "row")
        cp = _check_perm(col_perm, self.cols, "column")
        k = self.cols
        return FqMatrix(self.field, self.rows, k, tuple(self.entries[r * k + c] for r in rp for c in cp))

    def rank(self) -> int:
        rows = self.row_list()
        if self.rows > self.cols:
            rows = self.transpose().row_list()
        return rank_rows(self.field, rows)

    def is_full_rank(self) -> bool:
        return self.rank() == min(self.rows, self.cols)

    def to_text(self) -> str:
        lines = [f"q={self.field.designation} n={self.rows} k={self.cols}"]
        lines += [" ".join(str(v) for v in row) for row in self.row_list()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> FqMatrix:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if not lines:
            raise MatrixError("empty matrix text")
        head = dict(re.findall(r"(\w+)=(\S+)", lines[0]))
        if not {"q", "n", "k"} <= head.keys():
            raise MatrixError("matrix header must read 'q=<field> n=<rows> k=<cols>'")
        try:
            field = parse_field(head["q"])
        except FieldError as exc:
            raise MatrixError(str(exc)) from exc
        n, k = int(head["n"]), int(head["k"])
        body = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
        if len(body) != n or any(len(r) != k for r in body):
            raise MatrixError(f"matrix body does not match header n={n} k={k}")
        return cls.from_rows(field, body)


def rank(m: FqMatrix) -> int:
    return m.rank()


def is_full_rank(m: FqMatrix) -> bool:
    return m.is_full_rank()


def permute(m: FqMatrix, row_perm: Sequence[int], col_perm: Sequence[int]) -> FqMatrix:
    return m.permute(row_perm, col_perm)
