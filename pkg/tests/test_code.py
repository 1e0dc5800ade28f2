import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zkcodes.code import (
    classify,
    code_from_generators,
    direct_sum,
    dual_code,
    format_code,
    four_squares,
    inner_product,
    parse_code,
    type2_code,
    weights,
    whole_space,
    zero_code,
)
from zkcodes.errors import InputError, ResourceError

from conftest import brute_dual, brute_span


def test_span_examples():
    assert code_from_generators(2, 2, [(1, 1)]).codewords == ((0, 0), (1, 1))
    assert code_from_generators(3, 2, []).codewords == ((0, 0),)
    assert code_from_generators(4, 1, [(2,)]).codewords == ((0,), (2,))


def test_bad_parameters():
    with pytest.raises(InputError):
        code_from_generators(1, 2, [])
    with pytest.raises(InputError):
        code_from_generators(3, 0, [])
    with pytest.raises(InputError):
        code_from_generators(3, 2, [(1, 2, 0)])


def test_span_cap():
    assert whole_space(2, 10).cardinality == 1024
    with pytest.raises(ResourceError):
        code_from_generators(2, 12, [[int(i == j) for j in range(12)] for i in range(12)], cap=1000)


def test_inner_product():
    assert inner_product((1, 1), (1, 1), 2) == 0
    assert inner_product((1, 2), (2, 3), 4) == 0
    assert inner_product((1, 2), (1, 2), 5) == 0
    assert inner_product((1, 2), (1, 1), 5) == 3
    with pytest.raises(InputError):
        inner_product((1,), (1, 1), 3)


def test_dual_examples():
    assert dual_code(zero_code(3, 2)) == whole_space(3, 2)
    rep = code_from_generators(2, 2, [(1, 1)])
    assert dual_code(rep) == rep
    assert dual_code(whole_space(3, 1)) == zero_code(3, 1)


def test_weights():
    assert weights((0, 0, 0), 3) == (0, 0, (3, 0, 0))
    assert weights((1, 3), 4) == (2, 10, (0, 1, 0, 1))
    assert weights((2, 2, 1), 3) == (3, 9, (0, 1, 2))


def test_classify_examples():
    r = classify(code_from_generators(2, 2, [(1, 1)]))
    assert (r.self_orthogonal, r.self_dual, r.doubly_even) == (True, True, False)
    r = classify(zero_code(5, 3))
    assert (r.self_orthogonal, r.self_dual, r.doubly_even) == (True, False, None)
    r = classify(type2_code(2, 1))
    assert r.self_dual and r.doubly_even


def test_four_squares():
    assert four_squares(2) == (0, 1, 1, 1)
    assert four_squares(4) == (1, 1, 1, 2)
    assert four_squares(6) == (0, 1, 1, 3)
    for k in range(2, 40, 2):
        a, b, c, d = four_squares(k)
        assert 1 + a * a + b * b + c * c + d * d == 2 * k
        # smallest: no lexicographically earlier solution
        for t in itertools.product(range(k), repeat=4):
            if t >= (a, b, c, d):
                break
            assert 1 + sum(x * x for x in t) != 2 * k
    with pytest.raises(InputError):
        four_squares(5)


@pytest.mark.parametrize("k", [2, 4, 6, 8, 10, 12])
@pytest.mark.parametrize("m", [1, 2])
def test_type2_codes(k, m):
    c = type2_code(k, m)
    r = classify(c)
    assert c.n == 8 * m and c.n % 8 == 0
    assert r.self_dual and r.doubly_even
    assert r.cardinality == k ** (4 * m)


def test_type2_small_exhaustive():
    c = type2_code(2, 1)
    assert len(c.codewords) == 16
    assert dual_code(c) == c
    assert all(sum(x * x for x in w) % 4 == 0 for w in c.codewords)
    c4 = type2_code(4, 1)
    assert len(c4.codewords) == 256
    assert all(sum(x * x for x in w) % 8 == 0 for w in c4.codewords)


def test_lazy_type2_cap():
    c = type2_code(10, 2)
    assert c.cardinality == 10**8
    with pytest.raises(ResourceError):
        c.codewords


def test_text_roundtrip():
    c = code_from_generators(4, 3, [(1, 2, 3), (2, 0, 2)])
    assert parse_code(format_code(c)) == c
    text = "# comment\nk 3\nn 2\n1 2  # trailing\n"
    assert parse_code(text).codewords == ((0, 0), (1, 2), (2, 1))
    for bad in ["k 3\n", "k 3\nn x\n", "k 3\nn 2\n1 2 0\n", "k 3\nn 2\n1 3\n", "n 2\nk 3\n"]:
        with pytest.raises(InputError):
            parse_code(bad)


def test_direct_sum():
    a = code_from_generators(3, 1, [(1,)])
    b = code_from_generators(3, 2, [(1, 2)])
    s = direct_sum(a, b)
    assert s.cardinality == 9
    assert set(s.codewords) == {x + y for x in a.codewords for y in b.codewords}


codes = st.integers(2, 6).flatmap(
    lambda k: st.integers(1, 4).flatmap(
        lambda n: st.tuples(
            st.just(k), st.just(n),
            st.lists(st.lists(st.integers(0, k - 1), min_size=n, max_size=n), max_size=3),
        )
    )
)


@settings(max_examples=80, deadline=None)
@given(codes)
def test_span_and_dual_properties(params):
    k, n, rows = params
    c = code_from_generators(k, n, rows)
    words = c.codewords
    assert list(words) == brute_span(k, n, rows)
    assert (0,) * n in c
    members = set(words)
    for x in words[:30]:
        for y in words[:30]:
            assert tuple((a + b) % k for a, b in zip(x, y)) in members
    assert (k**n) % c.cardinality == 0
    assert all(g in c for g in c.generators)
    d = dual_code(c)
    assert list(d.codewords) == brute_dual(k, n, rows)
    assert c.cardinality * d.cardinality == k**n
    assert dual_code(d) == c
    # cardinality from the lattice index agrees with enumeration
    assert code_from_generators(k, n, rows, lazy=True).cardinality == len(words)


@settings(max_examples=60, deadline=None)
@given(codes)
def test_generator_doubly_even_matches_exhaustive(params):
    k, n, rows = params
    k = 2 * (k // 2) or 2
    rows = [[x % k for x in r] for r in rows]
    c = code_from_generators(k, n, rows)
    exhaustive = all(sum(x * x for x in w) % (2 * k) == 0 for w in c.codewords)
    assert classify(c).doubly_even == exhaustive


@settings(max_examples=60, deadline=None)
@given(codes)
def test_self_dual_matches_dual(params):
    k, n, rows = params
    c = code_from_generators(k, n, rows)
    assert classify(c).self_dual == (dual_code(c) == c)
    assert classify(c).self_orthogonal == all(
        inner_product(x, y, k) == 0 for x in c.codewords for y in c.codewords
    )


def test_random_seeded_duals():
    rng = random.Random(5)
    for _ in range(30):
        k, n = rng.choice([2, 3, 4, 6, 8]), rng.randint(1, 4)
        rows = [[rng.randrange(k) for _ in range(n)] for _ in range(rng.randint(0, 3))]
        c = code_from_generators(k, n, rows)
        assert list(dual_code(c).codewords) == brute_dual(k, n, rows)
