"""Construction-A lattices and their theta series.

Series use the variable u = q^(1/(2k)), so a lattice vector (c + kz)/sqrt(k)
contributes u^|c+kz|^2 and A_j contributes u^(x^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .code import Code, classify, dual_code
from .cyclo import eta_pow
from .errors import InputError, ResourceError
from .qseries import (
    TAIL_TOL,
    CycSeries,
    QSeries,
    eval_series,
    sqrt_z_over_i,
    tail_bound,
)
from .report import VerifyReport, timed
from .wenum import WeightEnumerator, cwe, symmetrize

DEFAULT_NODE_BUDGET = 10**8


def a_series(k: int, j: int, N: int) -> QSeries:
    if not 0 <= j < k:
        raise InputError(f"residue j={j} outside [0, {k})")
    coeffs = [0] * (N + 1)
    r = math.isqrt(N)
    for x in range(-r, r + 1):
        if x % k == j:
            coeffs[x * x] += 1
    return QSeries(2 * k, N, tuple(coeffs))


def _residue_squares(k: int, N: int) -> list[list[int]]:
    """Sorted x^2 <= N for each residue class of x mod k, with multiplicity."""
    r = math.isqrt(N)
    out = [[] for _ in range(k)]
    for x in range(-r, r + 1):
        out[x % k].append(x * x)
    for lst in out:
        lst.sort()
    return out


def theta_construction_a(c: Code, N: int, budget: int = DEFAULT_NODE_BUDGET) -> QSeries:
    """Count lattice vectors c + kz by norm, by depth-first enumeration.

    Codewords are arranged in a prefix trie so that shared prefixes are
    expanded once. Independent of the enumerator factorisation.
    """
    k, n = c.k, c.n
    squares = _residue_squares(k, N)
    trie: dict = {}
    for word in c.codewords:
        node = trie
        for x in word:
            node = node.setdefault(x, {})
    coeffs = [0] * (N + 1)
    visited = 0

    def dfs(node, depth, used):
        nonlocal visited
        last = depth == n - 1
        for r, child in node.items():
            for sq in squares[r]:
                total = used + sq
                if total > N:
                    break
                visited += 1
                if last:
                    coeffs[total] += 1
                else:
                    dfs(child, depth + 1, total)
            if visited > budget:
                raise ResourceError(f"lattice enumeration exceeded {budget} nodes; lower --trunc")

    dfs(trie, 0, 0)
    return QSeries(2 * k, N, tuple(coeffs))


def compose(w: WeightEnumerator, series: Sequence):
    """Evaluate a genus-1 enumerator at the given series (W(S_0, ..., S_{k-1}))."""
    if w.g != 1:
        raise InputError("compose needs a genus-1 enumerator")
    if len(series) != w.k:
        raise InputError(f"expected {w.k} series, got {len(series)}")
    scales = {s.scale for s in series}
    if len(scales) != 1:
        raise InputError(f"series scales differ: {sorted(scales)}")
    powers: dict = {}

    def power(j, e):
        key = (j, e)
        if key not in powers:
            powers[key] = series[j] if e == 1 else power(j, e - 1) * series[j]
        return powers[key]

    total = None
    for exp, coeff in sorted(w.terms.items()):
        term = None
        for j, e in enumerate(exp):
            if e:
                p = power(j, e)
                term = p if term is None else term * p
        term = term * coeff
        total = term if total is None else total + term
    return total


def b_series(k: int, N: int) -> list[CycSeries]:
    """B_m = sum_j eta^(jm) A_j, with cyclotomic-integer coefficients."""
    a = [CycSeries.embed(k, a_series(k, j, N)) for j in range(k)]
    out = []
    for m in range(k):
        acc = None
        for j in range(k):
            term = a[j].scaled(eta_pow(k, j * m))
            acc = term if acc is None else acc + term
        out.append(acc)
    return out


def b_series_cos(k: int, N: int) -> list[CycSeries]:
    """Real form A_0 + sum_j 2 cos(2 pi j m / k) A_j for the symmetrized variables.

    Each 2 cos value is eta^(jm) + eta^(-jm), taken exactly; it is a rational
    integer only for k in {1, 2, 3, 4, 6}, so the result stays in CycSeries.
    """
    h = k // 2
    a = [CycSeries.embed(k, a_series(k, j, N)) for j in range(h + 1)]
    out = []
    for m in range(h + 1):
        acc = a[0]
        for j in range(1, (k - 1) // 2 + 1):
            acc = acc + a[j].scaled(eta_pow(k, j * m) + eta_pow(k, -j * m))
        if k % 2 == 0:
            acc = acc + a[h].scaled(-1 if (m % 2) else 1)
        out.append(acc)
    return out


@dataclass(frozen=True)
class LatticeHandle:
    code: Code
    det_squared: Fraction

    @property
    def unimodular(self) -> bool:
        return self.det_squared == 1


def lattice(c: Code) -> LatticeHandle:
    return LatticeHandle(c, Fraction(c.k ** c.n, c.cardinality ** 2))


def _first_mismatch(a: QSeries, b: QSeries) -> Optional[int]:
    for m, (x, y) in enumerate(zip(a.coeffs, b.coeffs)):
        if x != y:
            return m
    return None


def verify_theorem1(c: Code, N: int, budget: int = DEFAULT_NODE_BUDGET) -> VerifyReport:
    with timed() as clock:
        lhs = compose(cwe(c), [a_series(c.k, j, N) for j in range(c.k)])
        rhs = theta_construction_a(c, N, budget=budget)
        diff = _first_mismatch(lhs, rhs)
    return VerifyReport(
        identity="thm1",
        params={"k": c.k, "n": c.n, "cardinality": c.cardinality, "trunc": N},
        verdict="pass" if diff is None else "fail",
        evidence={"first_mismatch": diff, "nonzero_terms": len(rhs.support())},
        elapsed_ms=clock.ms,
    )


def verify_theorem2(c: Code, N: int) -> VerifyReport:
    """Theta form of the MacWilliams identity, plus its self-dual and symmetrized variants."""
    with timed() as clock:
        k = c.k
        dual = dual_code(c)
        A = [a_series(k, j, N) for j in range(k)]
        lhs = compose(cwe(dual), A)
        raw = compose(cwe(c), b_series(k, N))
        ev: dict = {}
        divided = raw.divexact(c.cardinality)
        rhs = divided.as_qseries() if divided is not None else None
        if rhs is None:
            ev["rhs_integral"] = False
            ok = False
        else:
            ev["rhs_integral"] = True
            diff = _first_mismatch(lhs, rhs)
            ev["first_mismatch"] = diff
            ok = diff is None
        # symmetrized identity: S_{C-perp}(A_0..A_h) = |C|^-1 S_C(B'_0..B'_h)
        h = k // 2
        sym_lhs = compose(_sym_as_cwe(symmetrize(cwe(dual))), A[: h + 1])
        sym_raw = compose(_sym_as_cwe(symmetrize(cwe(c))), b_series_cos(k, N))
        sym_div = sym_raw.divexact(c.cardinality)
        sym_rhs = sym_div.as_qseries() if sym_div is not None else None
        sym_ok = sym_rhs is not None and _first_mismatch(sym_lhs, sym_rhs) is None
        ev["symmetrized_equal"] = sym_ok
        ok = ok and sym_ok
        self_dual = classify(c).self_dual
        ev["self_dual"] = self_dual
        if self_dual:
            # W_C(A) = W_C(B / sqrt(k)) with |C| = sqrt(k)^n
            ev["self_dual_invariance"] = rhs is not None and _first_mismatch(compose(cwe(c), A), rhs) is None
            ok = ok and ev["self_dual_invariance"]
    return VerifyReport(
        identity="thm2",
        params={"k": k, "n": c.n, "cardinality": c.cardinality, "trunc": N},
        verdict="pass" if ok else "fail",
        evidence=ev,
        elapsed_ms=clock.ms,
    )


def _sym_as_cwe(s) -> WeightEnumerator:
    # a symmetrized enumerator is a polynomial in h+1 variables; reuse compose
    return WeightEnumerator(len(next(iter(s.terms))), 1, s.n, dict(s.terms))


@dataclass
class NumericCheck:
    residual: float
    tail: float
    trunc: int
    lhs: complex
    rhs: complex

    def as_evidence(self) -> dict:
        return {"residual": self.residual, "tail_bound": self.tail, "trunc": self.trunc,
                "lhs": self.lhs, "rhs": self.rhs}


def _choose_trunc(tail, N):
    """Smallest N with tail(N) < TAIL_TOL, or check a given N."""
    if N is not None:
        t = tail(N)
        if t >= TAIL_TOL:
            raise ResourceError(f"truncation {N} leaves tail {t:.3g}; need < {TAIL_TOL}")
        return N
    hi = 1
    while tail(hi) >= TAIL_TOL:
        hi *= 2
        if hi > 10**6:
            raise ResourceError(f"no truncation below 10^6 reaches tail {TAIL_TOL}")
    lo = hi // 2
    while lo < hi:
        mid = (lo + hi) // 2
        if tail(mid) < TAIL_TOL:
            hi = mid
        else:
            lo = mid + 1
    return hi


def check_lemma1(k: int, j: int, z: complex, N: Optional[int] = None) -> NumericCheck:
    """A_j(-1/z) against k^(-1/2) (z/i)^(1/2) sum_m eta^(jm) A_m(z)."""
    z = complex(z)
    if z.imag <= 0:
        raise InputError(f"z must lie in the upper half-plane, got {z}")
    if not 0 <= j < k:
        raise InputError(f"residue j={j} outside [0, {k})")
    w = -1 / z
    pref = sqrt_z_over_i(z) / math.sqrt(k)

    def tail(M):
        return tail_bound(2 * k, M, w, 1) + abs(pref) * k * tail_bound(2 * k, M, z, 1)

    N = _choose_trunc(tail, N)
    lhs = eval_series(a_series(k, j, N), w)
    acc = 0j
    for m in range(k):
        acc += eta_pow(k, j * m).to_complex() * eval_series(a_series(k, m, N), z)
    rhs = pref * acc
    return NumericCheck(abs(lhs - rhs), tail(N), N, lhs, rhs)


def _theta_for_numeric(c: Code, N: int, method: str):
    if method == "auto":
        method = "enumerate" if c.n <= 3 else "compose"
    if method == "enumerate":
        return theta_construction_a(c, N)
    return compose(cwe(c), [a_series(c.k, j, N) for j in range(c.k)])


def check_prop3(c: Code, z: complex, N: Optional[int] = None, method: str = "auto") -> NumericCheck:
    """theta_C(-1/z) against det^-1 (z/i)^(n/2) theta_{C-perp}(z)."""
    z = complex(z)
    if z.imag <= 0:
        raise InputError(f"z must lie in the upper half-plane, got {z}")
    w = -1 / z
    k, n = c.k, c.n
    det = math.sqrt(lattice(c).det_squared)
    pref = sqrt_z_over_i(z) ** n / det

    def tail(M):
        return tail_bound(2 * k, M, w, n) + abs(pref) * tail_bound(2 * k, M, z, n)

    N = _choose_trunc(tail, N)
    dual = dual_code(c)
    lhs = eval_series(_theta_for_numeric(c, N, method), w)
    rhs = pref * eval_series(_theta_for_numeric(dual, N, method), z)
    return NumericCheck(abs(lhs - rhs), tail(N), N, lhs, rhs)


NUMERIC_TOL = 1e-9


def numeric_report(identity: str, params: dict, checks: list) -> VerifyReport:
    ok = all(ch.residual < NUMERIC_TOL and ch.tail < TAIL_TOL for ch in checks)
    return VerifyReport(
        identity=identity,
        params=params,
        verdict="pass" if ok else "fail",
        evidence={"checks": [ch.as_evidence() for ch in checks],
                  "max_residual": max(ch.residual for ch in checks)},
    )


def check_T_invariance(c: Code, N: int = 60) -> VerifyReport:
    """Every theta exponent must be a multiple of 2k (the series is invariant under z -> z+1)."""
    if c.k % 2:
        raise InputError("T-invariance needs even k")
    if not classify(c).doubly_even:
        raise InputError("T-invariance needs a doubly even code")
    with timed() as clock:
        theta = _theta_for_numeric(c, N, "auto")
        bad = [m for m in theta.support() if m % (2 * c.k)]
    return VerifyReport(
        identity="tinv",
        params={"k": c.k, "n": c.n, "trunc": N},
        verdict="pass" if not bad else "fail",
        evidence={"exponents": theta.support(), "offending": bad[:10]},
        elapsed_ms=clock.ms,
    )


def _centered_norm(word, k):
    return sum(min(x, k - x) ** 2 for x in word)


def evenness_trunc(c: Code) -> int:
    """A truncation large enough that an odd-class norm shows up when one exists.

    If some generator has norm not divisible by 2k, its centred lift is a
    witness; otherwise two generators with a non-integral pairing give a sum
    whose norm is the witness.
    """
    k = c.k
    gens = [g for g in c.generators if any(g)]
    norms = [2 * k]
    for i, a in enumerate(gens):
        norms.append(_centered_norm(a, k))
        for b in gens[i + 1:]:
            norms.append(_centered_norm(tuple((x + y) % k for x, y in zip(a, b)), k))
    return max(norms)


def verify_prop1(c: Code, N: Optional[int] = None) -> VerifyReport:
    """Code properties against lattice properties: integral, even, unimodular."""
    with timed() as clock:
        k, n = c.k, c.n
        rep = classify(c)
        ev: dict = {}
        # (1) integrality of the Gram entries on generators of C and k e_i, scaled by 1/sqrt(k)
        basis = [tuple(g) for g in c.generators] + [tuple(k if i == j else 0 for j in range(n)) for i in range(n)]
        integral = all(
            Fraction(sum(x * y for x, y in zip(a, b)), k).denominator == 1
            for i, a in enumerate(basis) for b in basis[i:]
        )
        ev["integral"] = integral
        ev["self_orthogonal"] = rep.self_orthogonal
        part1 = integral == rep.self_orthogonal
        # (2) even lattice
        part2 = True
        if k % 2 == 0:
            T = N if N is not None else evenness_trunc(c)
            theta = _theta_for_numeric(c, T, "auto")
            even = all(m % (2 * k) == 0 for m in theta.support())
            ev.update({"even_trunc": T, "even": even, "doubly_even": rep.doubly_even})
            part2 = even == rep.doubly_even
        # (3) unimodular
        L = lattice(c)
        unimodular = L.unimodular and integral
        ev["det_squared"] = f"{L.det_squared.numerator}/{L.det_squared.denominator}"
        ev["unimodular"] = unimodular
        ev["self_dual"] = rep.self_dual
        part3 = unimodular == rep.self_dual
        if k ** n <= 10**6:
            ev["dual_equals_code"] = dual_code(c) == c
            part3 = part3 and ev["dual_equals_code"] == rep.self_dual
        ev["parts"] = [part1, part2, part3]
    return VerifyReport(
        identity="prop1",
        params={"k": k, "n": n, "cardinality": c.cardinality},
        verdict="pass" if part1 and part2 and part3 else "fail",
        evidence=ev,
        elapsed_ms=clock.ms,
    )
