"""Greedy block-diagonalization of support patterns.

Both algorithms view the pattern as the incidence matrix of a bipartite
graph (rows on the left, columns on the right) and carve it into complete
bicliques, zeroing the links that leave each one. The resulting
:class:`~fqrank.pattern.BlockStructure` feeds
:func:`~fqrank.bounds.block_diag_bound`.

Patterns with more rows than columns are transposed first; the structure
records this in ``transposed``.

Every commit keeps the remaining graph row-saturating (a matching covers all
unassigned rows), so no zeroing ever drops the full-rank probability to 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .bounds import block_diag_bound
from .gf import FieldSpec
from .matching import max_matching
from .pattern import (BlockStructure, PatternError, StructureError, SupportPattern,
                      apply_structure, has_full_rank_realization)


class PreconditionError(ValueError):
    pass


@dataclass
class BicliqueState:
    left: set[int]
    right: set[int]
    frontier: list[tuple[str, int]]
    maximal: bool = False

    @property
    def area(self) -> int:
        return len(self.left) * len(self.right)


def _bits(mask: int) -> list[int]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return out


class _Carver:
    """Mutable working graph for one greedy pass (oriented, rows <= cols)."""

    def __init__(self, live: list[int], ncols: int):
        self.live = list(live)
        self.ncols = ncols
        self.active_rows = set(range(len(live)))
        self.active_cols = (1 << ncols) - 1
        self.blocks: list[tuple[list[int], list[int]]] = []
        self.zeroed: list[tuple[int, int]] = []

    def degree(self, i: int) -> int:
        return bin(self.live[i] & self.active_cols).count("1")

    def feasible(self, left: set[int], right: set[int]) -> bool:
        """Committing (left, right) leaves every other active row matchable."""
        if len(left) > len(right):
            return False
        rmask = sum(1 << c for c in right)
        cols = self.active_cols & ~rmask
        rest = sorted(self.active_rows - left)
        adj = [_bits(self.live[r] & cols) for r in rest]
        return all(j != -1 for j in max_matching(adj, self.ncols))

    def frontier(self, st: BicliqueState) -> list[tuple[str, int]]:
        """Rows and columns that keep (left, right) a complete biclique."""
        rmask = sum(1 << c for c in st.right)
        common = self.active_cols & ~rmask
        for r in st.left:
            common &= self.live[r]
        out = [("col", c) for c in _bits(common)]
        out += [("row", r) for r in sorted(self.active_rows - st.left)
                if self.live[r] & rmask == rmask]
        return out

    def grow(self, i: int, j: int) -> tuple[BicliqueState, tuple[set[int], set[int]]]:
        """Grow from edge (i, j) to a maximal biclique by largest area.

        Returns the maximal biclique and the largest-area state on the growth
        path that can be committed (n_l <= k_l and the rest stays matchable).
        Feasibility is not monotone along the path, so growth does not stop
        at the first infeasible state.
        """
        st = BicliqueState({i}, {j}, [])
        best = (1, ({i}, {j}))
        while True:
            st.frontier = self.frontier(st)
            if not st.frontier:
                st.maximal = True
                return st, best[1]
            nl, nr = len(st.left), len(st.right)
            kind, idx = min(st.frontier, key=lambda f: (
                -(nl * (nr + 1) if f[0] == "col" else (nl + 1) * nr), f[0] != "col", f[1]))
            if kind == "col":
                st.right = st.right | {idx}
            else:
                st.left = st.left | {idx}
            if st.area > best[0] and self.feasible(st.left, st.right):
                best = (st.area, (set(st.left), set(st.right)))

    def seeds(self):
        rows = sorted(self.active_rows, key=lambda r: (-self.degree(r), r))
        for r in rows:
            for c in _bits(self.live[r] & self.active_cols):
                yield r, c

    def commit(self, left: set[int], right: set[int]) -> None:
        rmask = sum(1 << c for c in right)
        for r in sorted(left):
            for c in _bits(self.live[r] & self.active_cols & ~rmask):
                self.zeroed.append((r, c))
            self.live[r] &= ~(self.active_cols & ~rmask)
        for r in sorted(self.active_rows - left):
            for c in _bits(self.live[r] & rmask):
                self.zeroed.append((r, c))
            self.live[r] &= ~rmask
        self.active_rows -= left
        self.active_cols &= ~rmask
        self.blocks.append((sorted(left), sorted(right)))

    def run(self, trace: Optional[list] = None) -> None:
        while self.active_rows:
            for i, j in self.seeds():
                if self.feasible({i}, {j}):
                    st, (left, right) = self.grow(i, j)
                    break
            else:  # pragma: no cover - unreachable while rows stay matchable
                raise PreconditionError("no feasible seed edge left")
            if trace is not None:
                trace.append((st, (left, right)))
            self.commit(left, right)

    def structure(self, transposed: bool) -> BlockStructure:
        row_perm = [r for rows, _ in self.blocks for r in rows]
        col_perm = [c for _, cols in self.blocks for c in cols]
        col_perm += _bits(self.active_cols)
        zeroed = sorted((c, r) if transposed else (r, c) for r, c in self.zeroed)
        return BlockStructure(tuple(row_perm), tuple(col_perm),
                              tuple((len(r), len(c)) for r, c in self.blocks),
                              tuple(zeroed), transposed)


def _orient(b: SupportPattern) -> tuple[SupportPattern, bool]:
    if b.rows > b.cols:
        return b.transpose(), True
    return b, False


def _require(b: SupportPattern) -> None:
    if not has_full_rank_realization(b):
        raise PreconditionError("no full-rank realization: the pattern has no matching of size min(n, k)")


def _single_oriented(ob: SupportPattern, transposed: bool, trace=None) -> BlockStructure:
    carver = _Carver([ob.row_mask(i) for i in range(ob.rows)], ob.cols)
    carver.run(trace)
    return carver.structure(transposed)


def greedy_single(b: SupportPattern, field: FieldSpec | None = None,
                  trace: Optional[list] = None) -> BlockStructure:
    """Grow one maximal biclique at a time, cut its outside links, repeat.

    Seed: the first edge, scanning rows by decreasing degree (then index)
    and columns ascending, that can be committed as a 1x1 block. Growth adds
    the column or row giving the largest area, columns before rows and low
    indices first on ties, until the biclique is maximal; the committed
    block is the largest state on that path with n_l <= k_l whose cut links
    leave the remaining rows matchable. ``field`` does not influence the
    result. Pass a list as ``trace`` to collect ``(maximal_state,
    (rows, cols))`` for each committed block.
    """
    _require(b)
    ob, transposed = _orient(b)
    return _single_oriented(ob, transposed, trace)


def greedy_parallel(b: SupportPattern, field: FieldSpec,
                    score: Callable[[BlockStructure, FieldSpec], Fraction] = block_diag_bound) -> BlockStructure:
    """Link-removal search on top of :func:`greedy_single`.

    Each round scores every live link whose removal keeps a full-rank
    realization by the bound of the structure ``greedy_single`` would build
    after removing it, and removes only the best one. Stops when no removal
    strictly beats the current structure. The result is never worse than
    ``greedy_single(b)``.
    """
    _require(b)
    ob, transposed = _orient(b)
    cache: dict[int, tuple[BlockStructure, Fraction]] = {}

    def evaluate(p: SupportPattern):
        if p.bits not in cache:
            s = _single_oriented(p, False)
            cache[p.bits] = (s, score(s, field))
        return cache[p.bits]

    work = ob
    best_s, best_v = evaluate(work)
    while True:
        choice = None
        for i, j in work.positions():
            cand = SupportPattern(work.rows, work.cols, work.bits & ~(1 << (i * work.cols + j)))
            if not has_full_rank_realization(cand):
                continue
            s, v = evaluate(cand)
            if v > best_v and (choice is None or v > choice[2]):
                choice = (cand, s, v)
        if choice is None:
            break
        work, best_s, best_v = choice

    removed = _bits(ob.bits & ~work.bits)
    zeroed = {divmod(x, ob.cols) for x in removed} | set(best_s.zeroed)
    zeroed = sorted((c, r) if transposed else (r, c) for r, c in zeroed)
    return BlockStructure(best_s.row_perm, best_s.col_perm, best_s.blocks, tuple(zeroed), transposed)


def verify_structure(b: SupportPattern, s: BlockStructure) -> bool:
    try:
        result = apply_structure(b, s)
    except (StructureError, PatternError):
        return False
    return has_full_rank_realization(result)


ALGORITHMS = {"single": greedy_single, "parallel": greedy_parallel}


def diagonalize(b: SupportPattern, field: FieldSpec, algorithm: str = "single") -> BlockStructure:
    try:
        fn = ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {sorted(ALGORITHMS)}") from None
    return fn(b, field)
