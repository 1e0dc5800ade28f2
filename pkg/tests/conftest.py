import itertools

import pytest


def brute_dual(k, n, words):
    """Every vector orthogonal to every word, by full scan."""
    return sorted(
        v for v in itertools.product(range(k), repeat=n)
        if all(sum(a * b for a, b in zip(v, w)) % k == 0 for w in words)
    )


def brute_span(k, n, rows):
    """Span by enumerating all integer combinations with coefficients in Z_k."""
    out = set()
    for coeffs in itertools.product(range(k), repeat=len(rows)):
        out.add(tuple(sum(c * r[i] for c, r in zip(coeffs, rows)) % k for i in range(n)))
    if not rows:
        out.add((0,) * n)
    return sorted(out)


@pytest.fixture
def oracle():
    return {"dual": brute_dual, "span": brute_span}
