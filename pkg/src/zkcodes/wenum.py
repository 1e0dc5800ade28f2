"""Complete, symmetrized and genus-g weight enumerators and the MacWilliams transform.

Variables of a genus-g enumerator are indexed by columns a in Z_k^g in
row-major order (last coordinate fastest); a.b is the dot product mod k.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .code import Code, dual_code
from .cyclo import CycInt, eta_pow, totient
from .errors import InputError, InvariantError, ResourceError

DEFAULT_TUPLE_CAP = 10**6
MAX_VARIABLES = 4096

Coeff = Union[int, CycInt]


@dataclass(frozen=True)
class WeightEnumerator:
    """Homogeneous polynomial of degree n in k^g variables z_a."""

    k: int
    g: int
    n: int
    terms: dict  # exponent tuple (length k^g) -> int or CycInt

    @property
    def nvars(self) -> int:
        return self.k**self.g

    def __eq__(self, other):
        if not isinstance(other, WeightEnumerator):
            return NotImplemented
        return (self.k, self.g, self.n) == (other.k, other.g, other.n) and self.terms == other.terms

    def coefficient_sum(self):
        return sum(self.terms.values())

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "g": self.g,
            "n": self.n,
            "terms": [{"exp": list(e), "coeff": _coeff_json(c)} for e, c in sorted(self.terms.items())],
        }

    def __str__(self):
        return _format_poly(self.terms, _var_names(self.k, self.g))


@dataclass(frozen=True)
class SymWeightEnumerator:
    """cwe with X_j and X_{k-j} identified; variables 0..floor(k/2)."""

    k: int
    n: int
    terms: dict

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "terms": [{"exp": list(e), "coeff": _coeff_json(c)} for e, c in sorted(self.terms.items())],
        }

    def __str__(self):
        return _format_poly(self.terms, [f"X{j}" for j in range(self.k // 2 + 1)])


def _coeff_json(c):
    if isinstance(c, CycInt):
        v = c.as_integer()
        return str(v) if v is not None else c.to_json()
    return str(c)


def _var_names(k, g):
    names = []
    for a in range(k**g):
        digits = []
        for _ in range(g):
            digits.append(a % k)
            a //= k
        names.append("z" + "".join(str(d) for d in reversed(digits)) if g > 1 else f"X{digits[0]}")
    return names


def _format_poly(terms, names):
    parts = []
    for e, c in sorted(terms.items(), reverse=True):
        mono = "*".join(
            (names[i] if x == 1 else f"{names[i]}^{x}") for i, x in enumerate(e) if x
        )
        cs = str(c.as_integer() if isinstance(c, CycInt) and c.as_integer() is not None else c)
        if not mono:
            parts.append(cs)
        elif cs == "1":
            parts.append(mono)
        else:
            parts.append(f"{cs}*{mono}")
    return " + ".join(parts) if parts else "0"


def enumerator_to_json(w) -> str:
    return json.dumps(w.to_json(), sort_keys=True)


# -- construction ------------------------------------------------------------

def _column_indices(words: np.ndarray, k: int, g: int, cap: int) -> np.ndarray:
    m, n = words.shape
    total = m**g
    if total > cap:
        raise ResourceError(f"{m}^{g} = {total} codeword tuples exceed the cap {cap}")
    idx = words
    for _ in range(g - 1):
        idx = (idx[:, None, :] * k + words[None, :, :]).reshape(-1, n)
    return idx


def genus_cwe(c: Code, g: int, cap: int = DEFAULT_TUPLE_CAP) -> WeightEnumerator:
    """Sum over g-tuples of codewords of prod_a z_a^{w_a(c_1..c_g)}."""
    if g < 1:
        raise InputError(f"genus must be >= 1, got {g}")
    k, n = c.k, c.n
    nvars = k**g
    if nvars > MAX_VARIABLES:
        raise ResourceError(f"k^g = {nvars} variables exceed the supported {MAX_VARIABLES}")
    idx = _column_indices(c.array(), k, g, cap)
    dtype = np.int16 if n < 2**15 else np.int64
    terms = defaultdict(int)
    chunk = max(1, (1 << 22) // max(nvars, 1))
    for start in range(0, len(idx), chunk):
        block = idx[start:start + chunk]
        counts = np.zeros((len(block), nvars), dtype=dtype)
        rows = np.arange(len(block))
        for i in range(n):
            counts[rows, block[:, i]] += 1
        uniq, mult = np.unique(counts, axis=0, return_counts=True)
        for row, cnt in zip(uniq.tolist(), mult.tolist()):
            terms[tuple(row)] += cnt
    return WeightEnumerator(k, g, n, dict(terms))


def cwe(c: Code) -> WeightEnumerator:
    return genus_cwe(c, 1)


def symmetrize(w: WeightEnumerator) -> SymWeightEnumerator:
    """Merge X_j and X_{k-j} into the variable indexed min(j, k-j)."""
    if w.g != 1:
        raise InputError("symmetrized enumerators are defined for genus 1 only")
    k = w.k
    h = k // 2
    terms = defaultdict(int)
    for e, coeff in w.terms.items():
        s = [0] * (h + 1)
        for j, x in enumerate(e):
            s[min(j, k - j)] += x
        terms[tuple(s)] += coeff
    return SymWeightEnumerator(k, w.n, {e: c for e, c in terms.items() if c})


# -- the MacWilliams substitution ------------------------------------------
#
# Monomials are packed integers: exponent of variable a sits in a field of
# `width` bits at offset width*a, so multiplying by z_a is one addition.
# Coefficients during expansion live in the group ring Z[x]/(x^k - 1) and are
# packed the same way (field m = coefficient of x^m); multiplying by eta^r is
# a field rotation. All fields stay nonnegative because the all-ones vector
# maps to 0 in Z[eta] and can be added freely to a lifted coefficient.


def _lift(k: int, coeff: Coeff) -> list[int]:
    if isinstance(coeff, CycInt):
        vec = list(coeff.coeffs) + [0] * (k - len(coeff.coeffs))
    else:
        vec = [int(coeff)] + [0] * (k - 1)
    low = min(vec)
    if low < 0:
        vec = [x - low for x in vec]
    return vec


class _Packer:
    def __init__(self, k: int, bits: int):
        self.k = k
        self.bits = bits
        self.field = (1 << bits) - 1
        self.mask = (1 << (bits * k)) - 1

    def pack(self, vec):
        out = 0
        for m in reversed(range(self.k)):
            out = (out << self.bits) | vec[m]
        return out

    def unpack(self, x):
        out = []
        for _ in range(self.k):
            out.append(x & self.field)
            x >>= self.bits
        return out


def _expand(terms: dict, forms: dict, width: int, rot_shift: list, pk: _Packer) -> dict:
    """Apply z_a -> sum_b eta^{r(a,b)} z_b to every monomial, Horner style.

    ``terms`` maps packed monomials of a common degree to packed group-ring
    coefficients; ``forms[a]`` lists (monomial increment, rotation) pairs.
    """
    sample = next(iter(terms))
    if sample == 0:
        return dict(terms)
    groups = defaultdict(dict)
    for mono, c in terms.items():
        low = (mono & -mono).bit_length() - 1
        a = low // width
        groups[a][mono - (1 << (width * a))] = c
    out = {}
    get = out.get
    mask = pk.mask
    for a, sub in groups.items():
        tsub = _expand(sub, forms, width, rot_shift, pk)
        for inc, r in forms[a]:
            if r == 0:
                for mono, c in tsub.items():
                    key = mono + inc
                    out[key] = get(key, 0) + c
            else:
                up, down = rot_shift[r]
                for mono, c in tsub.items():
                    key = mono + inc
                    out[key] = get(key, 0) + (((c << up) & mask) | (c >> down))
    return out


def _reduction_matrix(k: int) -> np.ndarray:
    """Row m holds x^m reduced modulo Phi_k, for m < k."""
    return np.array([eta_pow(k, m).coeffs for m in range(k)], dtype=np.int64).reshape(k, totient(k))


def _substitute(terms: dict, k: int, nvars: int, n: int, forms_of) -> dict:
    """Exact substitution, then reduction mod Phi_k; zero terms dropped.

    ``terms`` maps dense exponent tuples to coefficients; ``forms_of(a)``
    yields (b, r) meaning z_a contributes eta^r z_b.
    """
    width = 8 if n < 256 else n.bit_length()
    lifts = {e: _lift(k, coeff) for e, coeff in terms.items()}
    mass = sum(sum(vec) for vec in lifts.values())
    form_len = max(len(forms_of(a)) for a in range(nvars))
    need = (mass * form_len**n).bit_length() + 1
    # byte-aligned fields let the result be decoded in bulk by numpy
    fast = need <= 48 and width == 8
    bits = 64 if fast else need
    pk = _Packer(k, bits)
    packed_in = {}
    for e, vec in lifts.items():
        mono = 0
        for a in reversed(range(nvars)):
            mono = (mono << width) | e[a]
        packed_in[mono] = pk.pack(vec)
    forms = {a: [(1 << (width * b), r % k) for b, r in forms_of(a)] for a in range(nvars)}
    rot_shift = [(bits * r, bits * (k - r)) for r in range(k)]
    expanded = _expand(packed_in, forms, width, rot_shift, pk)
    if fast:
        return _decode_fast(expanded, k, nvars)
    out = {}
    fmask = (1 << width) - 1
    for mono, c in expanded.items():
        coeff = CycInt(k, pk.unpack(c))
        if coeff:
            e = []
            for _ in range(nvars):
                e.append(mono & fmask)
                mono >>= width
            out[tuple(e)] = coeff
    return out


def _decode_fast(expanded: dict, k: int, nvars: int) -> dict:
    monos = list(expanded)
    raw = b"".join(c.to_bytes(8 * k, "little") for c in expanded.values())
    fields = np.frombuffer(raw, dtype="<u8").astype(np.int64).reshape(len(monos), k)
    reduced = fields @ _reduction_matrix(k)
    keep = np.flatnonzero(np.any(reduced != 0, axis=1))
    exps = np.frombuffer(
        b"".join(monos[i].to_bytes(nvars, "little") for i in keep), dtype=np.uint8
    ).reshape(len(keep), nvars)
    out = {}
    for e, coeff in zip(exps.tolist(), reduced[keep].tolist()):
        out[tuple(e)] = CycInt._raw(k, tuple(coeff))
    return out


def _digits(a: int, k: int, g: int) -> list[int]:
    d = []
    for _ in range(g):
        d.append(a % k)
        a //= k
    return d[::-1]


def _full_forms(k: int, g: int):
    cols = [_digits(a, k, g) for a in range(k**g)]

    def forms_of(a):
        xa = cols[a]
        return [(b, sum(x * y for x, y in zip(xa, cols[b]))) for b in range(k**g)]

    return forms_of


def _axis_forms(k: int, g: int, axis: int):
    stride = k ** (g - 1 - axis)

    def forms_of(a):
        d = (a // stride) % k
        base = a - d * stride
        return [(base + b * stride, d * b) for b in range(k)]

    return forms_of


def macwilliams_transform(w: WeightEnumerator, cardinality: int, method: str = "staged") -> WeightEnumerator:
    """(1/|C|^g) T w with T = (eta^{a.b}); the result must be an integer enumerator.

    ``method="direct"`` substitutes z_a -> sum_b eta^{a.b} z_b in one pass.
    ``method="staged"`` factors T as a product of g one-coordinate
    substitutions (T is the g-fold Kronecker power of the k x k character
    table), reducing modulo Phi_k between passes so cancelled terms never
    propagate. Both are exact and agree; staged is much cheaper for g >= 2.
    """
    k, g, n = w.k, w.g, w.n
    if cardinality < 1:
        raise InputError("cardinality must be positive")
    for e in w.terms:
        if len(e) != k**g or sum(e) != n:
            raise InputError(f"term {e} is not a degree-{n} monomial in {k**g} variables")
    terms = dict(w.terms)
    if method == "direct" or g == 1:
        passes = [_full_forms(k, g)]
    elif method == "staged":
        passes = [_axis_forms(k, g, axis) for axis in range(g)]
    else:
        raise InputError(f"unknown method {method!r}")
    for forms_of in passes:
        if not terms:
            break
        terms = _substitute(terms, k, k**g, n, forms_of)
    scale = cardinality**g
    out = {}
    for e, coeff in terms.items():
        v = coeff.as_integer()
        if v is None:
            raise InvariantError(f"coefficient of {e} is not a rational integer: {coeff!r}")
        q, r = divmod(v, scale)
        if r or q < 0:
            raise InvariantError(
                f"coefficient {v} of {e} is not a nonnegative multiple of |C|^g = {scale}"
            )
        out[e] = q
    return WeightEnumerator(k, g, n, out)


def first_difference(a: dict, b: dict) -> Optional[tuple]:
    for e in sorted(set(a) | set(b)):
        if a.get(e, 0) != b.get(e, 0):
            return e
    return None


def verify_macwilliams(c: Code, g: int = 1, method: str = "staged", tuple_cap: int = DEFAULT_TUPLE_CAP):
    """Compare genus_cwe(C-perp, g) with the transform of genus_cwe(C, g)."""
    from .report import VerifyReport, timed

    with timed() as clock:
        dual = dual_code(c)
        lhs = genus_cwe(dual, g, cap=tuple_cap)
        rhs = macwilliams_transform(genus_cwe(c, g, cap=tuple_cap), c.cardinality, method=method)
        diff = first_difference(lhs.terms, rhs.terms)
        evidence = {"terms": len(lhs.terms), "first_mismatch": list(diff) if diff else None,
                    "dual_cardinality": dual.cardinality}
        ok = diff is None
        if g == 1:
            sym_ok = symmetrize(lhs).terms == symmetrize(rhs).terms
            evidence["symmetrized_equal"] = sym_ok
            ok = ok and sym_ok
    return VerifyReport(
        identity="macwilliams",
        params={"k": c.k, "n": c.n, "g": g, "cardinality": c.cardinality},
        verdict="pass" if ok else "fail",
        evidence=evidence,
        elapsed_ms=clock.ms,
    )
