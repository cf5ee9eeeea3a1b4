import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import span_rank
from fqrank.gf import GF
from fqrank.matrix import FqMatrix, MatrixError, is_full_rank, permute, rank


@st.composite
def matrices(draw, qs=(2, 3, 4, 5)):
    q = draw(st.sampled_from(qs))
    n = draw(st.integers(1, 4))
    k = draw(st.integers(1, 4))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=k, max_size=k), min_size=n, max_size=n))
    return FqMatrix.from_rows(GF(q), rows)


@st.composite
def matrix_and_perms(draw):
    m = draw(matrices())
    rp = draw(st.permutations(range(m.rows)))
    cp = draw(st.permutations(range(m.cols)))
    return m, rp, cp


def test_rank_examples():
    assert rank(FqMatrix.identity(GF(2), 3)) == 3
    assert rank(FqMatrix.zeros(GF(3), 2, 4)) == 0
    assert rank(FqMatrix.from_rows(GF(2), [[1, 1], [1, 1]])) == 1


def test_is_full_rank_examples():
    assert is_full_rank(FqMatrix.from_rows(GF(2), [[1, 0, 1]]))
    assert not is_full_rank(FqMatrix.from_rows(GF(2), [[0, 0, 0]]))
    # row 2 = 2 * row 1 in GF(5)
    m = FqMatrix.from_rows(GF(5), [[1, 2], [2, 4]])
    assert span_rank(m.row_list(), 5) == 1
    assert not is_full_rank(m)


def test_permute_examples():
    F = GF(3)
    m = FqMatrix.from_rows(F, [[1, 2, 0, 1], [0, 1, 1, 2], [2, 2, 1, 0], [1, 0, 0, 1]])
    assert permute(m, range(4), range(4)) == m
    full = FqMatrix.identity(F, 3)
    assert permute(full, [1, 0, 2], range(3)).is_full_rank()
    rev = permute(m, [3, 2, 1, 0], [3, 2, 1, 0])
    assert rev[0, 0] == m[3, 3]
    assert rank(rev) == rank(m) == span_rank(m.row_list(), 3)


def test_permute_rejects_bad_permutations():
    m = FqMatrix.identity(GF(2), 2)
    with pytest.raises(MatrixError):
        permute(m, [0], [0, 1])
    with pytest.raises(MatrixError):
        permute(m, [0, 0], [0, 1])


def test_construction_guards():
    with pytest.raises(MatrixError):
        FqMatrix.from_rows(GF(2), [[0, 2]])
    with pytest.raises(MatrixError):
        FqMatrix.from_rows(GF(2), [[0, 1], [1]])
    with pytest.raises(MatrixError):
        FqMatrix(GF(2), 0, 1, ())


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_rank_matches_span_oracle(m):
    assert rank(m) == span_rank(m.row_list(), m.field.order)


@settings(max_examples=200, deadline=None)
@given(matrix_and_perms())
def test_rank_invariant_under_permutation(mp):
    m, rp, cp = mp
    p = permute(m, rp, cp)
    assert rank(p) == rank(m)
    assert all(p[i, j] == m[rp[i], cp[j]] for i in range(m.rows) for j in range(m.cols))


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_rank_transpose_invariant_and_pure(m):
    before = m.entries
    r = rank(m)
    assert rank(m.transpose()) == r
    assert rank(m) == r
    assert m.entries == before
    assert 0 <= r <= min(m.rows, m.cols)


def test_text_round_trip():
    F = GF(9)
    m = FqMatrix.from_rows(F, [[0, 8, 3], [4, 4, 1]])
    text = m.to_text()
    assert text.splitlines()[0] == "q=3^2 n=2 k=3"
    assert FqMatrix.from_text(text) == m
    with pytest.raises(MatrixError):
        FqMatrix.from_text("q=2 n=2 k=2\n1 0\n")
    with pytest.raises(MatrixError):
        FqMatrix.from_text("n=1 k=1\n1\n")
