"""Lattices over Z[xi], xi a primitive p-th root of unity, and their thetas.

A coordinate x = sum_j a_j xi^j (j < p-1) is stored as its coefficient
vector. Series use v = exp(2 pi i z / (2p)), so x contributes v^trace_form(x),
where trace_form(x) = 2p Tr_{K+/Q}(x xbar / p) = p sum a_j^2 - (sum a_j)^2.
"""

from __future__ import annotations

import cmath
import itertools
import math
from typing import Sequence

from .code import Code, classify
from .errors import InputError, ResourceError
from .qseries import QSeries
from .report import VerifyReport, timed
from .theta import compose
from .wenum import cwe

DEFAULT_BOX_BUDGET = 10**7


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, math.isqrt(p) + 1))


def _check_prime(p: int):
    if p < 3 or not _is_prime(p):
        raise InputError(f"p must be an odd prime, got {p}")


def reduce_mod_B(a: Sequence[int], p: int) -> int:
    """Image of x under O -> O/(1 - xi) = F_p."""
    return sum(a) % p


def trace_form(a: Sequence[int], p: int) -> int:
    s = sum(a)
    return p * sum(x * x for x in a) - s * s


def trace_form_numeric(a: Sequence[int], p: int) -> float:
    """The same quantity summed over the p-1 complex embeddings xi -> exp(2 pi i r/p)."""
    total = 0.0
    for r in range(1, p):
        w = cmath.exp(2j * math.pi * r / p)
        x = sum(c * w**j for j, c in enumerate(a))
        total += abs(x) ** 2
    # sum over embeddings is Tr_{K/Q}(x xbar) = 2 Tr_{K+/Q}(x xbar)
    return total


def coordinate_table(p: int, N: int, budget: int = DEFAULT_BOX_BUDGET):
    """All coefficient vectors with trace_form <= N, as sorted (trace, residue) pairs.

    Scans the box |a_i| <= isqrt(N), which suffices since trace_form(a) >= sum a_i^2.
    """
    _check_prime(p)
    r = math.isqrt(N)
    box = (2 * r + 1) ** (p - 1)
    if box > budget:
        raise ResourceError(f"coordinate box of size {box} exceeds budget {budget}; lower --trunc")
    out = []
    for a in itertools.product(range(-r, r + 1), repeat=p - 1):
        t = trace_form(a, p)
        if t <= N:
            out.append((t, sum(a) % p))
    out.sort()
    return out


def theta_j(p: int, j: int, N: int, budget: int = DEFAULT_BOX_BUDGET) -> QSeries:
    if not 0 <= j < p:
        raise InputError(f"residue j={j} outside [0, {p})")
    coeffs = [0] * (N + 1)
    for t, res in coordinate_table(p, N, budget):
        if res == j:
            coeffs[t] += 1
    return QSeries(2 * p, N, tuple(coeffs))


def theta_cyclolattice(p: int, c: Code, N: int, budget: int = DEFAULT_BOX_BUDGET * 10) -> QSeries:
    """Count x in O^n with rho(x) in C by total trace, enumerating x directly."""
    if c.k != p:
        raise InputError(f"code modulus {c.k} differs from p={p}")
    table = coordinate_table(p, N)
    members = c._members
    n = c.n
    coeffs = [0] * (N + 1)
    visited = 0
    residues = [0] * n

    def dfs(depth, used):
        nonlocal visited
        for t, res in table:
            total = used + t
            if total > N:
                break
            visited += 1
            residues[depth] = res
            if depth == n - 1:
                if tuple(residues) in members:
                    coeffs[total] += 1
            else:
                dfs(depth + 1, total)
        if visited > budget:
            raise ResourceError(f"enumeration exceeded {budget} nodes; lower --trunc")

    dfs(0, 0)
    return QSeries(2 * p, N, tuple(coeffs))


def verify_theorem4(p: int, c: Code, N: int, require_self_orthogonal: bool = True) -> VerifyReport:
    _check_prime(p)
    if c.k != p:
        raise InputError(f"code modulus {c.k} differs from p={p}")
    so = classify(c).self_orthogonal
    if require_self_orthogonal and not so:
        raise InputError("code is not self-orthogonal; pass require_self_orthogonal=False to test anyway")
    with timed() as clock:
        lhs = theta_cyclolattice(p, c, N)
        rhs = compose(cwe(c), [theta_j(p, j, N) for j in range(p)])
        diff = next((m for m, (x, y) in enumerate(zip(lhs.coeffs, rhs.coeffs)) if x != y), None)
    return VerifyReport(
        identity="thm4",
        params={"p": p, "n": c.n, "cardinality": c.cardinality, "trunc": N,
                "require_self_orthogonal": require_self_orthogonal},
        verdict="pass" if diff is None else "fail",
        evidence={"first_mismatch": diff, "self_orthogonal": so, "exponents": lhs.support()},
        elapsed_ms=clock.ms,
    )
