import cmath
import itertools
import math
import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zkcodes.code import code_from_generators, dual_code, whole_space, zero_code
from zkcodes.errors import InputError, InvariantError, ResourceError
from zkcodes.wenum import (
    WeightEnumerator,
    cwe,
    genus_cwe,
    macwilliams_transform,
    symmetrize,
    verify_macwilliams,
)


def brute_genus(c, g):
    """Genus-g enumerator straight from the definition, columns indexed row-major."""
    k, n = c.k, c.n
    out = Counter()
    for tup in itertools.product(c.codewords, repeat=g):
        e = [0] * (k**g)
        for i in range(n):
            idx = 0
            for word in tup:
                idx = idx * k + word[i]
            e[idx] += 1
        out[tuple(e)] += 1
    return dict(out)


def evaluate(w, point):
    total = 0j
    for e, coeff in w.terms.items():
        c = coeff if isinstance(coeff, int) else coeff.to_complex()
        total += c * math.prod(p**x for p, x in zip(point, e))
    return total


def test_cwe_examples():
    assert cwe(zero_code(3, 2)).terms == {(2, 0, 0): 1}
    assert cwe(code_from_generators(2, 2, [(1, 1)])).terms == {(2, 0): 1, (0, 2): 1}
    assert cwe(whole_space(3, 1)).terms == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}


def test_genus_examples():
    c = code_from_generators(2, 2, [(1, 1)])
    assert genus_cwe(c, 1) == cwe(c)
    assert genus_cwe(zero_code(4, 3), 2).terms == {(3,) + (0,) * 15: 1}
    assert genus_cwe(c, 2).terms == {(2, 0, 0, 0): 1, (0, 2, 0, 0): 1, (0, 0, 2, 0): 1, (0, 0, 0, 2): 1}


def test_genus_cap():
    with pytest.raises(ResourceError):
        genus_cwe(whole_space(3, 4), 2, cap=1000)


def test_symmetrize_examples():
    assert symmetrize(cwe(whole_space(3, 1))).terms == {(1, 0): 1, (0, 1): 2}
    assert symmetrize(cwe(zero_code(5, 3))).terms == {(3, 0, 0): 1}
    w = WeightEnumerator(4, 1, 2, {(0, 1, 0, 1): 1})
    assert symmetrize(w).terms == {(0, 2, 0): 1}
    with pytest.raises(InputError):
        symmetrize(genus_cwe(zero_code(2, 1), 2))


def test_transform_examples():
    x0 = WeightEnumerator(3, 1, 1, {(1, 0, 0): 1})
    assert macwilliams_transform(x0, 1).terms == {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1}
    w = WeightEnumerator(2, 1, 2, {(2, 0): 1, (0, 2): 1})
    assert macwilliams_transform(w, 2).terms == w.terms
    w = WeightEnumerator(3, 1, 1, {(1, 0, 0): 1, (0, 1, 0): 1, (0, 0, 1): 1})
    assert macwilliams_transform(w, 3).terms == {(1, 0, 0): 1}


def test_transform_rejects_fake_input():
    w = WeightEnumerator(3, 1, 1, {(1, 0, 0): 1, (0, 1, 0): 1})
    with pytest.raises(InvariantError):
        macwilliams_transform(w, 2)
    with pytest.raises(InputError):
        macwilliams_transform(WeightEnumerator(2, 1, 2, {(1, 0): 1}), 1)


@pytest.mark.parametrize("k,n,rows,g", [
    (2, 2, [(1, 1)], 1), (2, 2, [(1, 1)], 2), (5, 1, [], 2), (5, 2, [(1, 2)], 1),
    (5, 2, [(1, 2)], 2), (4, 3, [(1, 2, 3)], 2), (6, 2, [(2, 3)], 2), (3, 3, [(1, 1, 1)], 3),
])
def test_verify_examples(k, n, rows, g):
    assert verify_macwilliams(code_from_generators(k, n, rows), g).passed


def test_json_shape():
    w = cwe(code_from_generators(3, 2, [(1, 2)]))
    js = w.to_json()
    assert js["k"] == 3 and js["g"] == 1 and js["n"] == 2
    exps = [t["exp"] for t in js["terms"]]
    assert exps == sorted(exps)
    assert all(isinstance(t["coeff"], str) for t in js["terms"])


codes = st.integers(2, 6).flatmap(
    lambda k: st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.just(k), st.just(n),
            st.lists(st.lists(st.integers(0, k - 1), min_size=n, max_size=n), max_size=3),
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(codes)
def test_genus_matches_definition(params):
    k, n, rows = params
    c = code_from_generators(k, n, rows)
    assert cwe(c).terms == brute_genus(c, 1)
    if c.cardinality <= 30:
        w = genus_cwe(c, 2)
        assert w.terms == brute_genus(c, 2)
        assert w.coefficient_sum() == c.cardinality**2
        assert all(sum(e) == n for e in w.terms)


@settings(max_examples=60, deadline=None)
@given(codes)
def test_transform_gives_dual_and_is_involutive(params):
    k, n, rows = params
    c = code_from_generators(k, n, rows)
    d = dual_code(c)
    w = cwe(c)
    t = macwilliams_transform(w, c.cardinality)
    assert t == cwe(d)
    assert macwilliams_transform(t, d.cardinality) == w


@settings(max_examples=25, deadline=None)
@given(codes)
def test_staged_equals_direct(params):
    k, n, rows = params
    c = code_from_generators(k, n, rows)
    if c.cardinality**2 > 2000 or k > 4:
        return
    w = genus_cwe(c, 2)
    assert macwilliams_transform(w, c.cardinality, "staged") == macwilliams_transform(w, c.cardinality, "direct")


def test_transform_against_numeric_substitution():
    # evaluate (1/|C|) W_C(T x) at random points and compare with W_{C-perp}(x)
    rng = random.Random(11)
    for k, n, rows, g in [(3, 3, [(1, 2, 0)], 2), (4, 2, [(1, 3)], 2), (5, 3, [(1, 1, 3)], 1), (6, 3, [(2, 3, 1)], 1)]:
        c = code_from_generators(k, n, rows)
        lhs_w = genus_cwe(dual_code(c), g)
        w = genus_cwe(c, g)
        nv = k**g
        x = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(nv)]
        eta = cmath.exp(2j * math.pi / k)

        def digits(a):
            out = []
            for _ in range(g):
                out.append(a % k)
                a //= k
            return out[::-1]

        tx = [sum(eta ** (sum(p * q for p, q in zip(digits(a), digits(b))) % k) * x[b] for b in range(nv))
              for a in range(nv)]
        expected = evaluate(w, tx) / c.cardinality**g
        assert abs(evaluate(lhs_w, x) - expected) < 1e-8 * max(1, abs(expected))
        assert macwilliams_transform(w, c.cardinality) == lhs_w
