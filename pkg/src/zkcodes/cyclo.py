"""Exact arithmetic in the cyclotomic integers Z[eta], eta = exp(2 pi i / k).

Elements are coefficient vectors of length phi(k) in the power basis
1, eta, ..., eta^(phi(k)-1), i.e. polynomials reduced modulo the k-th
cyclotomic polynomial. Reducing modulo x^k - 1 instead would leave zero
divisors and make "is this a rational integer?" ill-posed.
"""

from __future__ import annotations

import cmath
from functools import lru_cache

from .errors import InputError


def _poly_trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_divexact(num, den):
    """Quotient of num by the monic polynomial den; remainder must vanish."""
    num = list(num)
    dn = len(den) - 1
    assert den[-1] == 1
    q = [0] * max(len(num) - dn, 1)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            q[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return _poly_trim(q)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the k-th cyclotomic polynomial."""
    if k < 1:
        raise InputError(f"cyclotomic index must be >= 1, got {k}")
    num = [-1] + [0] * (k - 1) + [1]
    den = [1]
    for d in range(1, k):
        if k % d == 0:
            den = _poly_mul(den, cyclotomic_polynomial(d))
    return tuple(_poly_divexact(num, den))


def totient(k: int) -> int:
    return len(cyclotomic_polynomial(k)) - 1


@lru_cache(maxsize=None)
def _power_table(k: int) -> tuple[tuple[int, ...], ...]:
    # row m = reduction of x^m modulo Phi_k, for 0 <= m < max(k, 2 phi - 1)
    phi_k = cyclotomic_polynomial(k)
    d = len(phi_k) - 1
    rows = []
    cur = [0] * d
    cur[0] = 1
    for _ in range(max(k, 2 * d - 1)):
        rows.append(tuple(cur))
        # multiply by x, then fold the x^d term back
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(d):
                cur[j] -= top * phi_k[j]
    return tuple(rows)


def _reduce(k: int, poly) -> tuple[int, ...]:
    table = _power_table(k)
    d = totient(k)
    out = list(poly[:d]) + [0] * max(0, d - len(poly))
    for m in range(d, len(poly)):
        c = poly[m]
        if c:
            if m >= len(table):
                row = table[m % k]
            else:
                row = table[m]
            for j in range(d):
                out[j] += c * row[j]
    return tuple(out)


class CycInt:
    """An element of Z[eta_k] stored modulo the k-th cyclotomic polynomial."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs=(0,)):
        if k < 1:
            raise InputError(f"modulus must be >= 1, got {k}")
        self.k = k
        self.coeffs = _reduce(k, tuple(int(c) for c in coeffs))

    @classmethod
    def _raw(cls, k, coeffs):
        obj = object.__new__(cls)
        obj.k = k
        obj.coeffs = coeffs
        return obj

    @classmethod
    def from_int(cls, k: int, value: int) -> CycInt:
        return cls(k, (value,))

    def _coerce(self, other):
        if isinstance(other, CycInt):
            if other.k != self.k:
                raise InputError(f"modulus mismatch: {self.k} vs {other.k}")
            return other
        if isinstance(other, int):
            return CycInt.from_int(self.k, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt._raw(self.k, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycInt._raw(self.k, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CycInt._raw(self.k, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt._raw(self.k, _reduce(self.k, _poly_mul(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise InputError("negative powers are not supported")
        result = CycInt.from_int(self.k, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, CycInt):
            return self.k == other.k and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash((self.k, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CycInt({self.k}, {list(self.coeffs)})"

    def as_integer(self):
        """The rational integer this element equals, or None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def divexact(self, d: int):
        """Divide by a rational integer; None if some coefficient is not divisible."""
        out = []
        for c in self.coeffs:
            q, r = divmod(c, d)
            if r:
                return None
            out.append(q)
        return CycInt._raw(self.k, tuple(out))

    def conj(self) -> CycInt:
        """Complex conjugate: eta -> eta^(-1)."""
        poly = [0] * self.k
        for m, c in enumerate(self.coeffs):
            poly[(-m) % self.k] += c
        return CycInt(self.k, poly)

    def to_complex(self) -> complex:
        w = cmath.exp(2j * cmath.pi / self.k)
        return sum(c * w**m for m, c in enumerate(self.coeffs))

    def to_json(self):
        return {"k": self.k, "coeffs": [str(c) for c in self.coeffs]}


def eta_pow(k: int, m: int) -> CycInt:
    """eta^m for eta a primitive k-th root of unity."""
    return CycInt._raw(k, _power_table(k)[m % k])


def char_sum(k: int, m: int) -> CycInt:
    """sum_{j<k} eta^(j m); equals k when k | m and 0 otherwise."""
    total = CycInt.from_int(k, 0)
    for j in range(k):
        total = total + eta_pow(k, j * m)
    assert total.as_integer() is not None, "character sum left the rationals"
    return total


def as_integer(a: CycInt):
    return a.as_integer()
