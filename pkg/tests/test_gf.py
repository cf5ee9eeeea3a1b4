import itertools

import numpy as np
import pytest

from fqrank.gf import GF, FieldError, field_new, is_irreducible, parse_field, smallest_irreducible

SMALL_ORDERS = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64]


def gf2_polymod(a, b):
    """Remainder of GF(2) polynomials held as int bitmasks."""
    db = b.bit_length()
    while a and a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def test_prime_field_construction():
    F = field_new(2, 1)
    assert (F.order, F.characteristic, F.degree, F.reduction_poly) == (2, 2, 1, ())


def test_gf256_with_given_polynomial():
    # x^8+x^4+x^3+x^2+1, constant term first
    poly = [1, 0, 1, 1, 1, 0, 0, 0, 1]
    as_int = sum(c << i for i, c in enumerate(poly))
    assert as_int == 0x11D
    # independent trial division by every polynomial of degree 1..4
    assert all(gf2_polymod(as_int, d) != 0 for d in range(2, 32))
    F = field_new(2, 8, poly)
    assert F.order == 256
    assert F.designation == "2^8:poly=1,0,1,1,1,0,0,0,1"


@pytest.mark.parametrize("bad", [(4, 1), (1, 1), (9, 2), (0, 3)])
def test_non_prime_characteristic_rejected(bad):
    with pytest.raises(FieldError):
        field_new(*bad)


def test_reducible_or_malformed_polynomial_rejected():
    with pytest.raises(FieldError):
        field_new(2, 2, [1, 0, 1])  # x^2+1 = (x+1)^2
    with pytest.raises(FieldError):
        field_new(2, 2, [1, 1, 1, 1])  # wrong degree
    with pytest.raises(FieldError):
        field_new(2, 2, [1, 1, 0])  # not monic
    with pytest.raises(FieldError):
        field_new(3, 2, [1, 0, 5])


def test_order_cap():
    with pytest.raises(FieldError):
        field_new(2, 17)
    with pytest.raises(FieldError):
        field_new(65537)


def test_default_polynomials_are_smallest_irreducible():
    assert smallest_irreducible(2, 2) == (1, 1, 1)
    assert smallest_irreducible(2, 8) == (1, 1, 0, 1, 1, 0, 0, 0, 1)  # x^8+x^4+x^3+x+1
    assert smallest_irreducible(3, 2) == (1, 0, 1)  # x^2+1
    # nothing smaller in the integer order is irreducible
    for low in range(0x100, 0x11B):
        assert not is_irreducible([(low >> i) & 1 for i in range(9)], 2)


def test_small_examples():
    assert GF(2).add(1, 1) == 0
    assert GF(3).add(2, 2) == 1
    F4 = GF(4)
    alpha = F4.element(2)
    assert int(alpha + alpha) == 0
    assert int(alpha * alpha) == 3  # x^2 = x + 1 mod x^2+x+1
    assert GF(3).inv(2) == 2
    with pytest.raises(ZeroDivisionError):
        GF(2).inv(0)
    with pytest.raises(ZeroDivisionError):
        GF(2).element(0).inv()


def test_mixed_field_operands_rejected():
    with pytest.raises(FieldError):
        GF(2).element(1) + GF(3).element(1)
    with pytest.raises(FieldError):
        GF(4).element(1) * GF(2).element(1)


def test_gf4_matches_hand_table():
    from conftest import GF4_ADD, GF4_MUL
    F = GF(4)
    for a, b in itertools.product(range(4), repeat=2):
        assert F.add(a, b) == GF4_ADD[a][b]
        assert F.mul(a, b) == GF4_MUL[a][b]


@pytest.mark.parametrize("q", SMALL_ORDERS)
def test_field_axioms_exhaustive(q):
    F = GF(q)
    els = range(q)
    add = [[F.add(a, b) for b in els] for a in els]
    mul = [[F.mul(a, b) for b in els] for a in els]
    for a in els:
        assert add[a][0] == a and mul[a][1] == a and mul[a][0] == 0
        assert add[a][F.neg(a)] == 0
        assert F.sub(a, a) == 0
        if a:
            assert mul[a][F.inv(a)] == 1
        for b in els:
            assert add[a][b] == add[b][a]
            assert mul[a][b] == mul[b][a]
            for c in els:
                assert add[add[a][b]][c] == add[a][add[b][c]]
                assert mul[mul[a][b]][c] == mul[a][mul[b][c]]
                assert mul[a][add[b][c]] == add[mul[a][b]][mul[a][c]]


@pytest.mark.parametrize("q", [2, 3, 4, 5, 8, 9, 11, 16, 27, 32, 64, 81, 125, 128, 243, 256])
def test_fermat_exhaustive(q):
    F = GF(q)
    assert all(F.pow(a, q - 1) == 1 for a in range(1, q))
    assert F.pow(0, 0) == 1 and F.pow(0, 3) == 0


@pytest.mark.parametrize("q", [2, 9, 256])
def test_encoding_round_trip(q):
    F = GF(q)
    assert [int(F.element(v)) for v in range(q)] == list(range(q))
    with pytest.raises(FieldError):
        F.element(q)
    with pytest.raises(FieldError):
        F.element(-1)


@pytest.mark.parametrize("q", [3, 4, 9, 16])
def test_vectorized_ops_match_scalar(q):
    F = GF(q)
    a, b = np.meshgrid(np.arange(q), np.arange(q))
    a, b = a.ravel(), b.ravel()
    assert list(F.add_arr(a, b)) == [F.add(x, y) for x, y in zip(a, b)]
    assert list(F.mul_arr(a, b)) == [F.mul(x, y) for x, y in zip(a, b)]
    assert list(F.neg_arr(a)) == [F.neg(x) for x in a]
    assert list(F.inv_arr(a[a > 0])) == [F.inv(x) for x in a[a > 0]]


def test_parse_field():
    assert parse_field("3") == GF(3)
    assert parse_field("2^8") == GF(256)
    assert parse_field("4") == GF(4)
    assert parse_field("2^8:poly=1,0,1,1,1,0,0,0,1").reduction_poly == (1, 0, 1, 1, 1, 0, 0, 0, 1)
    assert parse_field("2^8 poly=1,0,1,1,1,0,0,0,1") == parse_field("2^8:poly=1,0,1,1,1,0,0,0,1")
    for bad in ["6", "x", "2^", "3:poly=1,1"]:
        with pytest.raises(FieldError):
            parse_field(bad)


def test_fields_are_cached_and_hashable():
    assert field_new(2, 4) is field_new(2, 4, None)
    assert {GF(4), GF(4), GF(2)} == {GF(2), GF(4)}
