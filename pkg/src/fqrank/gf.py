"""Exact arithmetic in GF(q), q = p^m.

Elements are canonical integers in ``[0, q)``: for ``m > 1`` the integer is the
base-``p`` digit vector of the polynomial residue (constant term = least
significant digit). Multiplication goes through log/antilog tables built once
per field, so ``q`` is capped at ``2**16``.

``FieldSpec`` methods work on plain ints (the fast path used by the matrix and
oracle code); ``FieldElement`` wraps an int with its field for operator use
and mixed-field checking.
"""

from __future__ import annotations

import builtins
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

MAX_ORDER = 2**16


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p): coefficient lists, constant term first ----------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    """Remainder of a / b over GF(p); b must have a nonzero leading coeff."""
    r = _poly_trim(list(a))
    db = len(b) - 1
    inv_lead = builtins.pow(b[-1], p - 2, p) if p > 2 else 1
    while len(r) - 1 >= db and r:
        coef = (r[-1] * inv_lead) % p
        shift = len(r) - 1 - db
        for i, bc in enumerate(b):
            r[shift + i] = (r[shift + i] - coef * bc) % p
        _poly_trim(r)
    return r


def _monic_polys(deg: int, p: int):
    """All monic polynomials of exact degree ``deg``, in integer-encoding order."""
    for low in range(p**deg):
        coeffs = []
        v = low
        for _ in range(deg):
            coeffs.append(v % p)
            v //= p
        coeffs.append(1)
        yield coeffs


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    poly = _poly_trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for div in _monic_polys(d, p):
            if not _poly_mod(poly, div, p):
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Order is that of the integer encoding ``sum(c_i * p**i)``, i.e. compare
    from the highest-degree coefficient down.
    """
    for cand in _monic_polys(m, p):
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")  # unreachable


def _poly_str(poly: Sequence[int]) -> str:
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if not c:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if c != 1:
            mono = f"{c}" if i == 0 else f"{c}*{mono}"
        terms.append(mono)
    return "+".join(terms) or "0"


# -- the field ---------------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """GF(p^m). Build with :func:`field_new` rather than directly."""

    characteristic: int
    degree: int
    reduction_poly: tuple[int, ...] = ()
    exp: np.ndarray = field(default=None, compare=False, repr=False)
    log: np.ndarray = field(default=None, compare=False, repr=False)
    generator: int = field(default=0, compare=False, repr=False)

    @property
    def order(self) -> int:
        return self.characteristic**self.degree

    @property
    def p(self) -> int:
        return self.characteristic

    @property
    def m(self) -> int:
        return self.degree

    @property
    def q(self) -> int:
        return self.order

    def __str__(self) -> str:
        return self.designation

    @property
    def designation(self) -> str:
        if self.degree == 1:
            return str(self.characteristic)
        base = f"{self.characteristic}^{self.degree}"
        if self.reduction_poly != smallest_irreducible(self.characteristic, self.degree):
            base += ":poly=" + ",".join(str(c) for c in self.reduction_poly)
        return base

    # scalar arithmetic on canonical ints

    def _check(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise FieldError(f"{a} is not an element of GF({self.order})")
        return a

    def add(self, a: int, b: int) -> int:
        p = self.characteristic
        if p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % p
        out, scale = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg(self, a: int) -> int:
        p = self.characteristic
        if p == 2:
            return a
        if self.degree == 1:
            return (-a) % p
        out, scale = 0, 1
        while a:
            out += ((-(a % p)) % p) * scale
            a //= p
            scale *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self.exp[int(self.log[a]) + int(self.log[b])])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative inverse")
        return int(self.exp[(self.order - 1) - int(self.log[a])])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero has no multiplicative inverse")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.order - 1)])

    def element(self, value: int) -> FieldElement:
        return FieldElement(self, self._check(value))

    def elements(self):
        return [FieldElement(self, v) for v in range(self.order)]

    # vectorized arithmetic on integer arrays

    def add_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        p = self.characteristic
        if p == 2:
            return np.bitwise_xor(a, b)
        if self.degree == 1:
            return (a + b) % p
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        scale = 1
        for _ in range(self.degree):
            out += (((a // scale) % p + (b // scale) % p) % p) * scale
            scale *= p
        return out

    def neg_arr(self, a: np.ndarray) -> np.ndarray:
        p = self.characteristic
        if p == 2:
            return a
        if self.degree == 1:
            return (-a) % p
        out = np.zeros_like(a, dtype=np.int64)
        scale = 1
        for _ in range(self.degree):
            out += ((-((a // scale) % p)) % p) * scale
            scale *= p
        return out

    def mul_arr(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        prod = self.exp[self.log[a] + self.log[b]]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv_arr(self, a: np.ndarray) -> np.ndarray:
        """Elementwise inverse; maps 0 to 0 (callers mask zeros themselves)."""
        return np.where(a == 0, 0, self.exp[(self.order - 1) - self.log[a]])


def _encode(coeffs: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def _decode(v: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        out.append(v % p)
        v //= p
    return out


def _slow_mul(a: int, b: int, p: int, poly: Sequence[int]) -> int:
    m = len(poly) - 1
    if m <= 0:
        return (a * b) % p
    da, db = _decode(a, p, m), _decode(b, p, m)
    prod = [0] * (2 * m)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    r = _poly_mod(prod, poly, p)
    return _encode(r, p)


def _build_tables(p: int, m: int, poly: Sequence[int]):
    q = p**m
    factors = _prime_factors(q - 1)
    for g in range(2 if q > 2 else 1, q):
        if all(_slow_pow(g, (q - 1) // r, p, poly) != 1 for r in factors):
            break
    else:
        g = 1  # q == 2
    exp = np.zeros(2 * (q - 1) + 1, dtype=np.int64)
    log = np.zeros(q, dtype=np.int64)
    x = 1
    for i in range(q - 1):
        exp[i] = x
        log[x] = i
        x = _slow_mul(x, g, p, poly)
    exp[q - 1 : 2 * (q - 1)] = exp[: q - 1]
    exp[2 * (q - 1)] = 1
    return exp, log, g


def _slow_pow(a: int, e: int, p: int, poly: Sequence[int]) -> int:
    out = 1
    while e:
        if e & 1:
            out = _slow_mul(out, a, p, poly)
        a = _slow_mul(a, a, p, poly)
        e >>= 1
    return out


def field_new(p: int, m: int = 1, poly: Optional[Sequence[int]] = None) -> FieldSpec:
    """Validated GF(p^m).

    ``poly`` is the reduction polynomial as coefficients, constant term first;
    omitted for ``m > 1`` it defaults to :func:`smallest_irreducible`.
    Construction is cached, so equal arguments return the same object.
    """
    return _field_new(p, m, None if poly is None else tuple(poly))


@lru_cache(maxsize=64)
def _field_new(p: int, m: int, poly: Optional[tuple[int, ...]]) -> FieldSpec:
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise FieldError(f"degree must be >= 1, got {m}")
    if p**m > MAX_ORDER:
        raise FieldError(f"field order {p}^{m} exceeds the 2^16 table limit")
    if m == 1:
        if poly:
            raise FieldError("prime fields take no reduction polynomial")
        reduction: tuple[int, ...] = ()
    elif poly is None:
        reduction = smallest_irreducible(p, m)
    else:
        reduction = tuple(int(c) for c in poly)
        if any(not 0 <= c < p for c in reduction):
            raise FieldError(f"polynomial coefficients must lie in [0, {p})")
        if len(reduction) != m + 1 or reduction[-1] != 1:
            raise FieldError(f"reduction polynomial must be monic of degree {m}")
        if not is_irreducible(reduction, p):
            raise FieldError(f"{_poly_str(reduction)} is reducible over GF({p})")
    exp, log, g = _build_tables(p, m, reduction or (0, 1))
    exp.setflags(write=False)
    log.setflags(write=False)
    return FieldSpec(p, m, reduction, exp, log, g)


def GF(q: int) -> FieldSpec:
    """Field of order q with the default reduction polynomial."""
    if q < 2:
        raise FieldError(f"invalid field order {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    if r != 1:
        raise FieldError(f"{q} is not a prime power")
    return field_new(p, m)


_DESIG = re.compile(r"^\s*(\d+)(?:\s*\^\s*(\d+))?\s*(?:[:;\s]\s*poly\s*=\s*([\d,\s]+))?\s*$")


def parse_field(text: str) -> FieldSpec:
    """Parse ``"p"``, ``"p^m"`` or ``"p^m:poly=c0,c1,...,cm"``.

    A bare integer that is a prime power but not prime (``"4"``) is read as
    that field order; non-prime-power integers are rejected.
    """
    mt = _DESIG.match(text)
    if not mt:
        raise FieldError(f"cannot parse field designation {text!r}")
    base = int(mt.group(1))
    poly = None
    if mt.group(3):
        poly = tuple(int(c) for c in mt.group(3).replace(" ", "").split(",") if c)
    if mt.group(2) is not None:
        return field_new(base, int(mt.group(2)), poly)
    if poly is not None:
        raise FieldError("poly= requires the p^m form")
    if is_prime(base):
        return field_new(base)
    return GF(base)


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    def _same(self, other: FieldElement) -> None:
        if not isinstance(other, FieldElement):
            raise TypeError(f"expected FieldElement, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"mixed-field operands: GF({self.field}) and GF({other.field})")

    def __add__(self, other: FieldElement) -> FieldElement:
        self._same(other)
        return FieldElement(self.field, self.field.add(self.value, other.value))

    def __sub__(self, other: FieldElement) -> FieldElement:
        self._same(other)
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __neg__(self) -> FieldElement:
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other: FieldElement) -> FieldElement:
        self._same(other)
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    def __truediv__(self, other: FieldElement) -> FieldElement:
        self._same(other)
        return FieldElement(self.field, self.field.div(self.value, other.value))

    def __pow__(self, e: int) -> FieldElement:
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inv(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.value))

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return self.value != 0

    def __repr__(self) -> str:
        return f"GF({self.field.order})({self.value})"


# module-level aliases mirroring the operation names
def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def pow(a: FieldElement, e: int) -> FieldElement:  # noqa: A001
    return a**e
