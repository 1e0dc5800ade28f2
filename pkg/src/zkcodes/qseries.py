"""Truncated q-series with integer or cyclotomic-integer coefficients.

A series of scale s is a power series in u with u^s = q = exp(2 pi i z),
so u = exp(2 pi i z / s). Choosing s = 2k makes every theta exponent of a
Construction-A lattice an integer.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .cyclo import CycInt, _power_table, totient
from .errors import InputError, ResourceError

TAIL_TOL = 1e-12


def _mul_trunc(a: list, b: list, N: int) -> list:
    out = [0] * (N + 1)
    na = [(i, x) for i, x in enumerate(a[: N + 1]) if x]
    nb = [(j, y) for j, y in enumerate(b[: N + 1]) if y]
    if len(na) > len(nb):
        na, nb = nb, na
    for i, x in na:
        lim = N - i
        for j, y in nb:
            if j > lim:
                break
            out[i + j] += x * y
    return out


def _check_compat(s, t):
    if s.scale != t.scale:
        raise InputError(f"series scales differ: {s.scale} vs {t.scale}")


@dataclass(frozen=True)
class QSeries:
    scale: int
    trunc: int
    coeffs: tuple

    @classmethod
    def zero(cls, scale, trunc):
        return cls(scale, trunc, (0,) * (trunc + 1))

    @classmethod
    def one(cls, scale, trunc):
        return cls(scale, trunc, (1,) + (0,) * trunc)

    def __post_init__(self):
        if len(self.coeffs) != self.trunc + 1:
            object.__setattr__(self, "coeffs", tuple(self.coeffs[: self.trunc + 1]) + (0,) * max(0, self.trunc + 1 - len(self.coeffs)))

    def __getitem__(self, m):
        return self.coeffs[m]

    def __add__(self, other):
        if isinstance(other, int):
            return QSeries(self.scale, self.trunc, (self.coeffs[0] + other,) + self.coeffs[1:])
        _check_compat(self, other)
        N = min(self.trunc, other.trunc)
        return QSeries(self.scale, N, tuple(a + b for a, b in zip(self.coeffs[: N + 1], other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.scale, self.trunc, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries(self.scale, self.trunc, tuple(a * other for a in self.coeffs))
        if isinstance(other, CycSeries):
            return other * self
        _check_compat(self, other)
        N = min(self.trunc, other.trunc)
        return QSeries(self.scale, N, tuple(_mul_trunc(self.coeffs, other.coeffs, N)))

    __rmul__ = __mul__

    def __pow__(self, e):
        result = QSeries.one(self.scale, self.trunc)
        for _ in range(e):
            result = result * self
        return result

    def support(self):
        return [m for m, c in enumerate(self.coeffs) if c]

    def to_json(self):
        return {"scale": self.scale, "trunc": self.trunc, "coeffs": [str(c) for c in self.coeffs]}

    def __str__(self):
        parts = []
        for m, c in enumerate(self.coeffs):
            if c:
                parts.append(str(c) if m == 0 else (f"u^{m}" if c == 1 else f"{c}*u^{m}"))
        return (" + ".join(parts) if parts else "0") + f" + O(u^{self.trunc + 1})"


@dataclass(frozen=True)
class CycSeries:
    """Series with Z[eta_k] coefficients, stored as phi(k) integer series.

    comps[r] holds the eta^r components of every coefficient.
    """

    k: int
    scale: int
    trunc: int
    comps: tuple

    @classmethod
    def embed(cls, k: int, s: QSeries) -> CycSeries:
        zero = (0,) * (s.trunc + 1)
        return cls(k, s.scale, s.trunc, (tuple(s.coeffs),) + (zero,) * (totient(k) - 1))

    def __add__(self, other):
        if isinstance(other, QSeries):
            other = CycSeries.embed(self.k, other)
        if self.k != other.k:
            raise InputError("cyclotomic moduli differ")
        _check_compat(self, other)
        N = min(self.trunc, other.trunc)
        comps = tuple(
            tuple(x + y for x, y in zip(a[: N + 1], b)) for a, b in zip(self.comps, other.comps)
        )
        return CycSeries(self.k, self.scale, N, comps)

    __radd__ = __add__

    def scaled(self, c) -> CycSeries:
        """Multiply by an int or a CycInt constant."""
        if isinstance(c, int):
            return CycSeries(self.k, self.scale, self.trunc,
                             tuple(tuple(x * c for x in comp) for comp in self.comps))
        return self * CycSeries(self.k, self.scale, self.trunc,
                                tuple((v,) + (0,) * self.trunc for v in c.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, CycInt)):
            return self.scaled(other)
        if isinstance(other, QSeries):
            _check_compat(self, other)
            N = min(self.trunc, other.trunc)
            return CycSeries(self.k, self.scale, N,
                             tuple(tuple(_mul_trunc(comp, other.coeffs, N)) for comp in self.comps))
        if self.k != other.k:
            raise InputError("cyclotomic moduli differ")
        _check_compat(self, other)
        N = min(self.trunc, other.trunc)
        d = totient(self.k)
        table = _power_table(self.k)
        acc = [[0] * (N + 1) for _ in range(d)]
        for r, a in enumerate(self.comps):
            if not any(a):
                continue
            for t, b in enumerate(other.comps):
                if not any(b):
                    continue
                prod = _mul_trunc(a, b, N)
                row = table[r + t]
                for j, w in enumerate(row):
                    if w:
                        tgt = acc[j]
                        for m, x in enumerate(prod):
                            if x:
                                tgt[m] += w * x
        return CycSeries(self.k, self.scale, N, tuple(tuple(x) for x in acc))

    __rmul__ = __mul__

    def __pow__(self, e):
        one = CycSeries.embed(self.k, QSeries.one(self.scale, self.trunc))
        result = one
        for _ in range(e):
            result = result * self
        return result

    def coeff(self, m) -> CycInt:
        return CycInt._raw(self.k, tuple(comp[m] for comp in self.comps))

    def divexact(self, d: int):
        """Divide every coefficient by d; None if any is not divisible."""
        comps = []
        for comp in self.comps:
            out = []
            for x in comp:
                q, r = divmod(x, d)
                if r:
                    return None
                out.append(q)
            comps.append(tuple(out))
        return CycSeries(self.k, self.scale, self.trunc, tuple(comps))

    def as_qseries(self):
        """The integer series this equals, or None if a coefficient is irrational."""
        if any(any(comp) for comp in self.comps[1:]):
            return None
        return QSeries(self.scale, self.trunc, self.comps[0])

    def to_json(self):
        return {
            "scale": self.scale,
            "trunc": self.trunc,
            "k": self.k,
            "coeffs": [[str(comp[m]) for comp in self.comps] for m in range(self.trunc + 1)],
        }


def eval_series(s: QSeries, z: complex) -> complex:
    """sum_m c_m exp(2 pi i m z / scale) for Im z > 0."""
    z = complex(z)
    if z.imag <= 0:
        raise InputError(f"z must lie in the upper half-plane, got {z}")
    m = np.arange(s.trunc + 1)
    powers = np.exp(2j * np.pi * z * m / s.scale)
    coeffs = np.array([float(c) for c in s.coeffs])
    return complex(np.dot(coeffs, powers))


def tail_bound(scale: int, trunc: int, z: complex, dim: int) -> float:
    """Bound on sum_{m > trunc} c_m |u|^m when c_m <= (2 sqrt(m) + 1)^dim.

    The ratio f(m+1)/f(m) of the majorant decreases in m, so once it drops
    below 1 the remainder is bounded by a geometric series.
    """
    z = complex(z)
    if z.imag <= 0:
        raise InputError(f"z must lie in the upper half-plane, got {z}")
    log_r = -2 * math.pi * z.imag / scale

    def log_f(m):
        return dim * math.log(2 * math.sqrt(m) + 1) + m * log_r

    total = 0.0
    m = trunc + 1
    for _ in range(10**6):
        lf = log_f(m)
        ratio = math.exp(log_f(m + 1) - lf)
        if ratio < 1:
            return total + math.exp(lf) / (1 - ratio)
        total += math.exp(lf)
        m += 1
    return math.inf


def required_trunc(scale: int, z: complex, dim: int, tol: float = TAIL_TOL, limit: int = 10**6) -> int:
    """Smallest truncation whose certified tail is below ``tol``."""
    hi = 1
    while tail_bound(scale, hi, z, dim) >= tol:
        hi *= 2
        if hi > limit:
            raise ResourceError(f"no truncation below {limit} reaches tail {tol} at z={z}")
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if tail_bound(scale, mid, z, dim) < tol:
            hi = mid
        else:
            lo = mid + 1
    return hi


def sqrt_z_over_i(z: complex) -> complex:
    """Principal (z/i)^(1/2); z/i has positive real part on the upper half-plane."""
    return cmath.sqrt(complex(z) / 1j)
