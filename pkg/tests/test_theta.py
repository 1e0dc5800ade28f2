import cmath
import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zkcodes.code import code_from_generators, direct_sum, type2_code, whole_space, zero_code
from zkcodes.errors import InputError, ResourceError
from zkcodes.qseries import CycSeries, QSeries, eval_series, tail_bound
from zkcodes.theta import (
    a_series,
    b_series,
    check_lemma1,
    check_prop3,
    check_T_invariance,
    compose,
    evenness_trunc,
    lattice,
    theta_construction_a,
    verify_prop1,
    verify_theorem1,
    verify_theorem2,
)
from zkcodes.wenum import WeightEnumerator, cwe


def series(scale, trunc, sparse):
    c = [0] * (trunc + 1)
    for m, v in sparse.items():
        c[m] = v
    return QSeries(scale, trunc, tuple(c))


def brute_theta(c, N):
    """Count integer vectors x with x mod k in C and |x|^2 <= N, by scanning a box."""
    r = math.isqrt(N)
    out = [0] * (N + 1)
    members = set(c.codewords)
    for x in itertools.product(range(-r, r + 1), repeat=c.n):
        s = sum(v * v for v in x)
        if s <= N and tuple(v % c.k for v in x) in members:
            out[s] += 1
    return out


def test_a_series_examples():
    assert a_series(2, 0, 10) == series(4, 10, {0: 1, 4: 2})
    assert a_series(2, 1, 10) == series(4, 10, {1: 2, 9: 2})
    for k in range(2, 7):
        for j in range(k):
            assert a_series(k, j, 30)[0] == (1 if j == 0 else 0)
    with pytest.raises(InputError):
        a_series(3, 3, 10)


def test_sum_of_a_series_is_z_theta():
    for k in (2, 3, 5):
        total = a_series(k, 0, 50)
        for j in range(1, k):
            total = total + a_series(k, j, 50)
        assert total == theta_construction_a(whole_space(k, 1), 50)


def test_construction_a_examples():
    assert theta_construction_a(zero_code(2, 1), 16) == series(4, 16, {0: 1, 4: 2, 16: 2})
    assert theta_construction_a(whole_space(2, 1), 9) == series(4, 9, {0: 1, 1: 2, 4: 2, 9: 2})
    rep = code_from_generators(2, 2, [(1, 1)])
    assert theta_construction_a(rep, 10) == series(4, 10, {0: 1, 2: 4, 4: 4, 8: 4, 10: 8})


def test_construction_a_budget():
    with pytest.raises(ResourceError):
        theta_construction_a(whole_space(2, 3), 100, budget=50)


@pytest.mark.parametrize("k,n,rows", [(2, 2, [(1, 1)]), (3, 2, [(1, 2)]), (4, 3, [(1, 2, 3)]), (5, 2, [(1, 2)]),
                                      (6, 2, [(2, 3)]), (3, 3, [])])
def test_construction_a_matches_box_scan(k, n, rows):
    c = code_from_generators(k, n, rows)
    assert list(theta_construction_a(c, 40).coeffs) == brute_theta(c, 40)


def test_compose_examples():
    A = [a_series(2, j, 10) for j in range(2)]
    w = WeightEnumerator(2, 1, 2, {(2, 0): 1, (0, 2): 1})
    assert compose(w, A) == series(4, 10, {0: 1, 2: 4, 4: 4, 8: 4, 10: 8})
    assert compose(WeightEnumerator(2, 1, 3, {(3, 0): 1}), A) == A[0] ** 3
    assert compose(WeightEnumerator(2, 1, 1, {(1, 0): 1, (0, 1): 1}), A) == A[0] + A[1]
    with pytest.raises(InputError):
        compose(w, [a_series(2, 0, 10), a_series(3, 1, 10)])


def test_direct_sum_multiplies_theta():
    a = code_from_generators(3, 1, [(1,)])
    b = code_from_generators(3, 2, [(1, 2)])
    assert theta_construction_a(direct_sum(a, b), 60) == theta_construction_a(a, 60) * theta_construction_a(b, 60)


def sigma3(m):
    return sum(d**3 for d in range(1, m + 1) if m % d == 0)


@pytest.mark.parametrize("k", [2, 4, 6])
def test_type2_gives_e8(k):
    # an 8-dimensional even unimodular lattice has theta 1 + 240 sum sigma_3(m) q^m
    c = type2_code(k, 1)
    N = 2 * k * 4
    th = compose(cwe(c), [a_series(k, j, N) for j in range(k)])
    for e in range(N + 1):
        if e % (2 * k):
            assert th[e] == 0
        else:
            m = e // (2 * k)
            assert th[e] == (1 if m == 0 else 240 * sigma3(m))
    if k == 2:
        assert th == theta_construction_a(c, N)


@pytest.mark.parametrize("k,n,rows,N", [(2, 2, [(1, 1)], 400), (3, 3, [], 400), (6, 3, [], 400), (3, 2, [(1, 2)], 200),
                                        (4, 2, [(1, 1)], 200)])
def test_enumerator_theta_matches_enumeration(k, n, rows, N):
    assert verify_theorem1(code_from_generators(k, n, rows), N).passed


def test_theta_macwilliams_instances():
    r = verify_theorem2(code_from_generators(2, 2, [(1, 1)]), 100)
    assert r.passed and r.evidence["self_dual_invariance"]
    assert verify_theorem2(zero_code(3, 1), 100).passed
    assert verify_theorem2(code_from_generators(5, 2, [(1, 2)]), 60).passed
    assert verify_theorem2(code_from_generators(8, 2, [(2, 5)]), 60).passed


def test_b_series_are_not_integral_in_general():
    B = b_series(3, 20)
    assert B[1].as_qseries() == a_series(3, 0, 20) - a_series(3, 1, 20)
    B = b_series(5, 20)
    assert B[0].as_qseries() is not None
    assert B[1].as_qseries() is None


def test_cycseries_arithmetic():
    a = CycSeries.embed(5, a_series(5, 1, 30))
    b = CycSeries.embed(5, a_series(5, 2, 30))
    assert (a * b).as_qseries() == a_series(5, 1, 30) * a_series(5, 2, 30)
    assert (a + b).divexact(1).as_qseries() == a_series(5, 1, 30) + a_series(5, 2, 30)


def test_eval_series():
    one = series(4, 10, {0: 1})
    assert eval_series(one, 0.3 + 2j) == 1
    z = 2j
    s = a_series(2, 0, 400)
    direct = sum(cmath.exp(2j * math.pi * z * x * x / 4) for x in range(-20, 21, 2))
    assert abs(eval_series(s, z) - direct) < 1e-12
    with pytest.raises(InputError):
        eval_series(one, 1 - 0.5j)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=11, max_size=11), st.lists(st.integers(-5, 5), min_size=11, max_size=11),
       st.floats(-1, 1), st.floats(0.3, 3))
def test_eval_linear(a, b, x, y):
    s, t = QSeries(6, 10, tuple(a)), QSeries(6, 10, tuple(b))
    z = complex(x, y)
    assert abs(eval_series(s + t, z) - eval_series(s, z) - eval_series(t, z)) < 1e-9


def test_tail_bound_dominates_true_tail():
    for k, z in [(2, 1j), (3, 0.2 + 1.1j), (5, -0.3 + 1.4j)]:
        full = a_series(k, 1, 4000)
        for N in (10, 40, 90):
            r = abs(cmath.exp(2j * math.pi * z / (2 * k)))
            true_tail = sum(c * r**m for m, c in enumerate(full.coeffs) if m > N)
            assert true_tail <= tail_bound(2 * k, N, z, 1)


@pytest.mark.parametrize("k,j,z", [(2, 0, 1j), (3, 1, 0.2 + 1.1j), (5, 4, -0.3 + 1.4j), (6, 5, 0.01 + 0.8j),
                                   (4, 2, -0.49 + 1j)])
def test_a_series_inversion_instances(k, j, z):
    ch = check_lemma1(k, j, z)
    assert ch.residual < 1e-9 and ch.tail < 1e-12


def test_a_series_inversion_bad_inputs():
    with pytest.raises(InputError):
        check_lemma1(3, 0, -1j)
    with pytest.raises(ResourceError):
        check_lemma1(3, 0, 1j, N=3)


@pytest.mark.parametrize("c,z", [
    (code_from_generators(2, 2, [(1, 1)]), 1j),
    (zero_code(2, 1), 0.1 + 1.2j),
    (code_from_generators(3, 3, [(1, 1, 1)]), 1j),
    (code_from_generators(4, 3, [(1, 2, 3)]), -0.3 + 1.4j),
])
def test_lattice_inversion_instances(c, z):
    ch = check_prop3(c, z)
    assert ch.residual < 1e-9 and ch.tail < 1e-12


def test_type2_theta_is_self_dual_under_inversion():
    for k in (2, 4):
        ch = check_prop3(type2_code(k, 1), 0.2 + 1.1j)
        assert ch.residual < 1e-9


def test_t_invariance():
    assert check_T_invariance(type2_code(2, 1)).passed
    assert check_T_invariance(type2_code(4, 1)).passed
    with pytest.raises(InputError):
        check_T_invariance(code_from_generators(2, 2, [(1, 1)]))
    with pytest.raises(InputError):
        check_T_invariance(zero_code(3, 2))


def test_lattice_handle():
    assert lattice(zero_code(4, 1)).det_squared == 4
    assert lattice(code_from_generators(2, 2, [(1, 1)])).unimodular
    for k, n, rows in [(3, 2, [(1, 2)]), (6, 3, [(2, 3, 0)]), (4, 2, [])]:
        c = code_from_generators(k, n, rows)
        assert lattice(c).det_squared * c.cardinality**2 == k**n


def test_code_lattice_dictionary_examples():
    r = verify_prop1(code_from_generators(2, 2, [(1, 1)]))
    assert r.passed and r.evidence["self_dual"] and not r.evidence["even"]
    r = verify_prop1(type2_code(2, 1))
    assert r.passed and r.evidence["even"] and r.evidence["unimodular"]
    r = verify_prop1(zero_code(4, 1))
    assert r.passed and r.evidence["self_orthogonal"] and not r.evidence["self_dual"]
    assert r.evidence["det_squared"] == "4/1"


codes = st.sampled_from([2, 4, 6, 8]).flatmap(
    lambda k: st.integers(1, 3).flatmap(
        lambda n: st.tuples(
            st.just(k), st.just(n),
            st.lists(st.lists(st.integers(0, k - 1), min_size=n, max_size=n), max_size=3),
        )
    )
)


@settings(max_examples=60, deadline=None)
@given(codes)
def test_evenness_witness_truncation(params):
    # the chosen truncation must expose an odd-class norm whenever the code is not doubly even
    k, n, rows = params
    c = code_from_generators(k, n, rows)
    r = verify_prop1(c)
    assert r.passed
    deep = theta_construction_a(c, max(evenness_trunc(c), 4 * k * n))
    assert all(m % (2 * k) == 0 for m in deep.support()) == r.evidence["even"]
