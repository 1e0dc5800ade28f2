"""Linear codes over Z_k: spans, duals, weights and classification.

A code is stored by its generators; the full codeword list is materialised
lazily (and capped), so generator-level questions such as classification of
a large type II code never enumerate it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import InputError, InvariantError, ResourceError

Codeword = tuple[int, ...]

DEFAULT_SPAN_CAP = 10**7
DEFAULT_SCAN_CAP = 10**7


def _check_modulus(k: int, n: int):
    if k < 2:
        raise InputError(f"modulus k must be >= 2, got {k}")
    if n < 1:
        raise InputError(f"length n must be >= 1, got {n}")


def _normalise_rows(k, n, rows) -> tuple[Codeword, ...]:
    out = []
    for row in rows:
        row = tuple(int(x) % k for x in row)
        if len(row) != n:
            raise InputError(f"generator {row} has length {len(row)}, expected {n}")
        out.append(row)
    return tuple(out)


def _additive_order(c: Codeword, k: int) -> int:
    g = k
    for x in c:
        g = gcd(g, x)
    return k // g


def _extend_span(span: set, gen: Codeword, k: int, cap: int):
    order = _additive_order(gen, k)
    if order == 1 or gen in span:
        return span
    multiples = [tuple((t * x) % k for x in gen) for t in range(order)]
    new = set()
    for s in span:
        for m in multiples:
            new.add(tuple((a + b) % k for a, b in zip(s, m)))
        if len(new) > cap:
            raise ResourceError(
                f"span exceeds the cap of {cap} codewords; reduce n or k, or raise the cap"
            )
    return new


def _span(gens: Sequence[Codeword], k: int, n: int, cap: int) -> set:
    span = {(0,) * n}
    for g in gens:
        span = _extend_span(span, g, k, cap)
    return span


def _lattice_index(gens: Sequence[Codeword], k: int, n: int) -> int:
    """[Z^n : rho^{-1}(C)], from an integer echelon form of gens + k*I."""
    rows = [list(g) for g in gens] + [[k if i == j else 0 for j in range(n)] for i in range(n)]
    det = 1
    for col in range(n):
        live = [r for r in rows if r[col] != 0]
        rows = [r for r in rows if r[col] == 0]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            nxt = [piv]
            for r in live[1:]:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
                if r[col] != 0:
                    nxt.append(r)
                else:
                    rows.append(r)
            live = nxt
        det *= abs(live[0][col])
    return det


@dataclass(frozen=True, eq=False)
class Code:
    """An additive subgroup of Z_k^n given by generators."""

    k: int
    n: int
    generators: tuple[Codeword, ...]
    span_cap: int = field(default=DEFAULT_SPAN_CAP, repr=False)

    @cached_property
    def cardinality(self) -> int:
        if "codewords" in self.__dict__:
            return len(self.codewords)
        index = _lattice_index(self.generators, self.k, self.n)
        return self.k**self.n // index

    @cached_property
    def codewords(self) -> tuple[Codeword, ...]:
        """All codewords in lexicographic order."""
        if self.cardinality > self.span_cap:
            raise ResourceError(
                f"code has {self.cardinality} codewords, above the span cap {self.span_cap}"
            )
        return tuple(sorted(_span(self.generators, self.k, self.n, self.span_cap)))

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.codewords)

    def __contains__(self, word) -> bool:
        return tuple(word) in self._members

    def __iter__(self):
        return iter(self.codewords)

    def __len__(self):
        return self.cardinality

    def __eq__(self, other):
        if not isinstance(other, Code):
            return NotImplemented
        return (self.k, self.n, self.codewords) == (other.k, other.n, other.codewords)

    def __hash__(self):
        return hash((self.k, self.n, self.codewords))

    def array(self) -> np.ndarray:
        return np.array(self.codewords, dtype=np.int64).reshape(-1, self.n)

    def minimal_generators(self) -> tuple[Codeword, ...]:
        """A small generating set, chosen greedily in codeword order.

        Not canonical: two generating sets of the same code may differ.
        """
        gens = []
        span = {(0,) * self.n}
        for c in self.codewords:
            if c not in span:
                gens.append(c)
                span = _extend_span(span, c, self.k, self.span_cap)
                if len(span) == self.cardinality:
                    break
        return tuple(gens)


def code_from_generators(k: int, n: int, rows: Iterable[Sequence[int]] = (),
                         cap: int = DEFAULT_SPAN_CAP, lazy: bool = False) -> Code:
    """The smallest additive subgroup of Z_k^n containing ``rows``.

    With ``lazy=False`` the span is enumerated immediately, so an oversized
    code fails here with ResourceError rather than on first use.
    """
    _check_modulus(k, n)
    code = Code(k, n, _normalise_rows(k, n, rows), span_cap=cap)
    if not lazy:
        code.codewords
    return code


def _code_from_words(k: int, n: int, words, cap: int = DEFAULT_SPAN_CAP) -> Code:
    words = tuple(sorted(words))
    code = Code(k, n, (), span_cap=cap)
    code.__dict__["codewords"] = words
    gens = code.minimal_generators()
    out = Code(k, n, gens, span_cap=cap)
    out.__dict__["codewords"] = words
    return out


def zero_code(k: int, n: int) -> Code:
    return code_from_generators(k, n, [])


def whole_space(k: int, n: int) -> Code:
    return code_from_generators(k, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])


def direct_sum(c1: Code, c2: Code) -> Code:
    """Concatenation code C1 (+) C2 of length n1 + n2."""
    if c1.k != c2.k:
        raise InputError("direct sum needs a common modulus")
    gens = [g + (0,) * c2.n for g in c1.generators] + [(0,) * c1.n + g for g in c2.generators]
    return code_from_generators(c1.k, c1.n + c2.n, gens, cap=max(c1.span_cap, c2.span_cap))


def inner_product(c1: Sequence[int], c2: Sequence[int], k: int) -> int:
    if len(c1) != len(c2):
        raise InputError(f"length mismatch: {len(c1)} vs {len(c2)}")
    return sum(a * b for a, b in zip(c1, c2)) % k


def dual_code(c: Code, cap: int = DEFAULT_SCAN_CAP) -> Code:
    """C-perp by exhaustive scan of Z_k^n against the generators."""
    k, n = c.k, c.n
    total = k**n
    if total > cap:
        raise ResourceError(
            f"dual needs a scan of {k}^{n} = {total} vectors, above the cap {cap}; reduce n"
        )
    G = np.array(c.generators, dtype=np.int64).reshape(-1, n)
    powers = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    found = []
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        vecs = (idx[:, None] // powers[None, :]) % k
        if len(G):
            ok = np.all((vecs @ G.T) % k == 0, axis=1)
            vecs = vecs[ok]
        found.append(vecs)
    words = [tuple(int(x) for x in row) for row in np.concatenate(found)]
    dual = _code_from_words(k, n, words, cap=max(c.span_cap, cap))
    if c.cardinality * dual.cardinality != total:
        raise InvariantError(
            f"|C|*|C_perp| = {c.cardinality}*{dual.cardinality} != {k}^{n}"
        )
    return dual


def weights(c: Sequence[int], k: int):
    """(Hamming weight, Euclidean weight sum c_i^2, symbol profile w_0..w_{k-1})."""
    profile = [0] * k
    for x in c:
        if not 0 <= x < k:
            raise InputError(f"entry {x} is not a residue mod {k}")
        profile[x] += 1
    hamming = len(c) - profile[0]
    euclid = sum(x * x for x in c)
    return hamming, euclid, tuple(profile)


@dataclass(frozen=True)
class CodeReport:
    self_orthogonal: bool
    self_dual: bool
    doubly_even: Optional[bool]
    cardinality: int


def is_self_orthogonal(c: Code) -> bool:
    gens = c.generators
    return all(
        inner_product(gens[i], gens[j], c.k) == 0
        for i in range(len(gens)) for j in range(i, len(gens))
    )


def is_doubly_even(c: Code) -> Optional[bool]:
    """Generator criterion: e_i^2 = 0 mod 2k and e_i.e_j = 0 mod k, over Z.

    Only defined for even k; returns None for odd k.
    """
    k = c.k
    if k % 2:
        return None
    gens = c.generators
    for i, e in enumerate(gens):
        if sum(x * x for x in e) % (2 * k):
            return False
        for f in gens[i + 1:]:
            if sum(a * b for a, b in zip(e, f)) % k:
                return False
    return True


def classify(c: Code) -> CodeReport:
    so = is_self_orthogonal(c)
    size = c.cardinality
    return CodeReport(
        self_orthogonal=so,
        self_dual=so and size * size == c.k**c.n,
        doubly_even=is_doubly_even(c),
        cardinality=size,
    )


def four_squares(k: int) -> tuple[int, int, int, int]:
    """Lexicographically smallest (a, b, c, d) with 1 + a^2 + b^2 + c^2 + d^2 = 2k."""
    if k < 2 or k % 2:
        raise InputError(f"four_squares needs an even k >= 2, got {k}")
    target = 2 * k - 1
    for a, b, c in itertools.product(range(k), repeat=3):
        rest = target - a * a - b * b - c * c
        if rest < 0:
            continue
        d = int(round(rest**0.5))
        while d * d > rest:
            d -= 1
        while (d + 1) * (d + 1) <= rest:
            d += 1
        if d * d == rest and d < k:
            return a, b, c, d
    raise InvariantError(f"no four-square decomposition of {target}")  # pragma: no cover


def type2_matrix(k: int) -> list[list[int]]:
    a, b, c, d = four_squares(k)
    M = [[a, b, c, d], [b, -a, -d, c], [c, d, -a, -b], [d, -c, b, -a]]
    return [[x % k for x in row] for row in M]


def type2_code(k: int, m: int, cap: int = DEFAULT_SPAN_CAP) -> Code:
    """Code of length 8m generated by (I_4m | M_4m) with M built from four_squares(k).

    The result is lazy: classification works from the generators even when
    the k^(4m) codewords are far beyond the span cap.
    """
    if k < 2 or k % 2:
        raise InputError(f"type II construction needs an even k, got {k}")
    if m < 1:
        raise InputError(f"block count must be >= 1, got {m}")
    M = type2_matrix(k)
    size = 4 * m
    rows = []
    for i in range(size):
        row = [0] * (2 * size)
        row[i] = 1
        blk = i // 4
        for j in range(4):
            row[size + 4 * blk + j] = M[i % 4][j]
        rows.append(row)
    return code_from_generators(k, 2 * size, rows, cap=cap, lazy=True)


# -- text format -----------------------------------------------------------

def parse_code(text: str, cap: int = DEFAULT_SPAN_CAP) -> Code:
    """Parse ``k <int>``, ``n <int>`` then one generator row per line; ``#`` comments."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if len(lines) < 2:
        raise InputError("code file needs 'k <int>' and 'n <int>' header lines")
    try:
        key_k, val_k = lines[0].split()
        key_n, val_n = lines[1].split()
        if key_k != "k" or key_n != "n":
            raise ValueError
        k, n = int(val_k), int(val_n)
        rows = [[int(x) for x in line.split()] for line in lines[2:]]
    except ValueError:
        raise InputError("malformed code file") from None
    _check_modulus(k, n)
    for row in rows:
        if len(row) != n:
            raise InputError(f"row {row} has length {len(row)}, expected {n}")
        if any(not 0 <= x < k for x in row):
            raise InputError(f"row {row} has entries outside 0..{k - 1}")
    return code_from_generators(k, n, rows, cap=cap, lazy=True)


def format_code(c: Code, minimal: bool = True) -> str:
    gens = c.minimal_generators() if minimal else c.generators
    lines = [f"k {c.k}", f"n {c.n}"]
    lines += [" ".join(str(x) for x in g) for g in gens]
    return "\n".join(lines) + "\n"
