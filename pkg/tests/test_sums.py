from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product

import pytest

from wittram.algebra.symbolic import monomial_degrees, reduce_mod, used_variables
from wittram.witt.sums import TruncationBoundError, ghost, sum_polynomials


def rational_sum_value(p, xs, ys):
    """S_0..S_{n-1} at integer points, solved from the ghost equations with exact fractions."""
    n = len(xs)
    out = []
    for i in range(n):
        wx = sum(p ** d * Fraction(xs[d]) ** (p ** (i - d)) for d in range(i + 1))
        wy = sum(p ** d * Fraction(ys[d]) ** (p ** (i - d)) for d in range(i + 1))
        known = sum(p ** d * out[d] ** (p ** (i - d)) for d in range(i))
        out.append((wx + wy - known) / p ** i)
    return out


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_ghost_identity(p, n):
    table = sum_polynomials(p, n)
    gens = table.context.gens()
    X, Y = gens[:n], gens[n:]
    for i in range(n):
        assert ghost(p, table.S, i) == ghost(p, X, i) + ghost(p, Y, i)


@pytest.mark.parametrize("p,n", [(2, 3), (3, 3), (5, 2)])
def test_values_match_ghost_equations_at_integer_points(p, n):
    table = sum_polynomials(p, n)
    for point in product(range(-1, 3), repeat=2 * n):
        if sum(map(abs, point)) > 4:
            continue
        xs, ys = point[:n], point[n:]
        expected = rational_sum_value(p, xs, ys)
        for i in range(n):
            got = table.S[i](*point)
            assert Fraction(int(got)) == expected[i]


@pytest.mark.parametrize("p,n", [(2, 4), (3, 4), (5, 4), (7, 3),
                                 pytest.param(7, 4, marks=pytest.mark.slow)])
def test_monomial_degrees_congruent_to_one(p, n):
    table = sum_polynomials(p, n)
    for S in table.S:
        assert all((d - 1) % (p - 1) == 0 for d in monomial_degrees(S))


@pytest.mark.parametrize("p,n", [(2, 4), (3, 3), (5, 3)])
def test_g_uses_only_earlier_variables(p, n):
    table = sum_polynomials(p, n)
    for i in range(1, n + 1):
        allowed = set(range(i - 1)) | set(range(n, n + i - 1))
        assert used_variables(table.g[i - 1]) <= allowed
        assert table.f[i - 1] == reduce_mod(table.X(i) + table.g[i - 1], p)


def test_small_examples():
    for p in (2, 3, 5, 7):
        t = sum_polynomials(p, 2)
        X1, X2, Y1, Y2 = t.X(1), t.X(2), t.Y(1), t.Y(2)
        assert t.S[0] == X1 + Y1
        assert t.S[1] == X2 + Y2 + (X1 ** p + Y1 ** p - (X1 + Y1) ** p) / p
    t = sum_polynomials(2, 2)
    X1, X2, Y1, Y2 = t.X(1), t.X(2), t.Y(1), t.Y(2)
    assert t.S[1] == X2 + Y2 - X1 * Y1
    assert reduce_mod(t.S[1], 2) == X2 + Y2 + X1 * Y1
    assert t.f[1] == X2 + X1 * Y1


def test_table_is_cached_and_thread_safe():
    with ThreadPoolExecutor(8) as pool:
        tables = list(pool.map(lambda _: sum_polynomials(3, 3), range(16)))
    assert all(t is tables[0] for t in tables)


def test_bounds(monkeypatch):
    with pytest.raises(TruncationBoundError):
        sum_polynomials(2, 6)
    with pytest.raises(TruncationBoundError):
        sum_polynomials(11, 1)
    with pytest.raises(ValueError):
        sum_polynomials(4, 2)
    monkeypatch.setenv("WITTRAM_MAX_N", "6")
    assert sum_polynomials(2, 6).n == 6
