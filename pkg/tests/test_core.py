import itertools

import pytest
from hypothesis import given, strategies as st

from nnecap.core import Symbol, ZqVector, l1_distance, lee_abs, lee_distance, psi
from nnecap.errors import ParameterError


def test_psi():
    assert psi(7, 5) == 2
    assert psi(0, 5) == 0
    # brute force: the b in [0, 4] congruent to -3
    assert psi(-3, 5) == [b for b in range(5) if (b - (-3)) % 5 == 0][0] == 2


def test_lee_abs():
    assert lee_abs(3, 5) == 2
    assert lee_abs(0, 5) == 0
    assert lee_abs(4, 5) == 1


def test_lee_distance_examples():
    u = ZqVector((0, 0), 5)
    assert lee_distance(u, ZqVector((1, 3), 5)) == lee_abs(-1, 5) + lee_abs(-3, 5) == 3
    assert lee_distance(u, u) == 0
    assert lee_distance(u, ZqVector((2, 1), 5)) == 3


def test_lee_distance_mismatch():
    with pytest.raises(ParameterError):
        lee_distance(ZqVector((0, 0), 5), ZqVector((0, 0), 7))
    with pytest.raises(ParameterError):
        lee_distance(ZqVector((0, 0), 5), ZqVector((0,), 5))


def test_l1_distance():
    assert l1_distance((0, 0), (1, 2)) == 3
    assert l1_distance((0, 0), (0, 0)) == 0
    assert l1_distance(Symbol((0, 1), 3), Symbol((2, 2), 3)) == 3
    with pytest.raises(ParameterError):
        l1_distance((0, 0), (0, 0, 0))


def test_symbol_validation_and_index():
    with pytest.raises(ParameterError):
        Symbol((0, 3), 3)
    s = Symbol((2, 1), 3)
    assert s.index() == 7
    assert Symbol.from_index(7, 2, 3) == s


def test_zq_canonical():
    assert ZqVector((7, -1), 5).coords == (2, 4)
    assert ZqVector((7, -1), 5) == ZqVector((2, 4), 5)


@given(st.integers(-1000, 1000), st.integers(1, 60))
def test_lee_abs_symmetric(x, q):
    assert lee_abs(x, q) == lee_abs(-x, q)
    assert 0 <= lee_abs(x, q) <= q // 2


@pytest.mark.parametrize("q", range(1, 51))
def test_lee_abs_below_integer_gap(q):
    for u, v in itertools.product(range(q), repeat=2):
        assert lee_abs(u - v, q) <= abs(psi(u, q) - psi(v, q))


@pytest.mark.parametrize("q", range(1, 8))
@pytest.mark.parametrize("d", [1, 2])
def test_metrics_exhaustive(d, q):
    pts = [ZqVector(c, q) for c in itertools.product(range(q), repeat=d)]
    syms = [c for c in itertools.product(range(q), repeat=d)]
    for a, b in itertools.product(range(len(pts)), repeat=2):
        la = lee_distance(pts[a], pts[b])
        assert (la == 0) == (a == b)
        assert la == lee_distance(pts[b], pts[a])
        l1 = l1_distance(syms[a], syms[b])
        assert (l1 == 0) == (a == b)
        assert l1 == l1_distance(syms[b], syms[a])
    for a, b, c in itertools.product(range(len(pts)), repeat=3):
        assert lee_distance(pts[a], pts[c]) <= lee_distance(pts[a], pts[b]) + lee_distance(pts[b], pts[c])
        assert l1_distance(syms[a], syms[c]) <= l1_distance(syms[a], syms[b]) + l1_distance(syms[b], syms[c])


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("d", [1, 2])
def test_lee_below_l1_when_embedded(d, n):
    for q in (2 * n - 1, 2 * n + 3):
        for u, v in itertools.product(itertools.product(range(n), repeat=d), repeat=2):
            assert lee_distance(ZqVector(u, q), ZqVector(v, q)) <= l1_distance(u, v)
