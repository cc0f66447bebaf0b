"""Universal Witt addition polynomials.

Indexing is shifted by one: coordinates are X_1..X_n, the ghost polynomials
are W_i = sum_{d=0}^{i} p^d X_{d+1}^{p^(i-d)} for 0 <= i < n, and S_i is the
sum polynomial in X_1..X_{i+1}, Y_1..Y_{i+1}.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from sympy.ntheory import isprime

from .. import _config
from ..algebra.symbolic import SymbolicPoly, exact_divide, reduce_mod, witt_context


class TruncationBoundError(ValueError):
    """Requested symbolic table exceeds the configured (p, n) bounds."""


@dataclass(frozen=True)
class SumPolynomialTable:
    p: int
    n: int
    S: tuple[SymbolicPoly, ...]  # S_0..S_{n-1} over Z
    f: tuple[SymbolicPoly, ...]  # f_1..f_n over F_p, f_i = S_{i-1} mod p - Y_i
    g: tuple[SymbolicPoly, ...]  # f_i = X_i + g_i

    @property
    def context(self):
        return witt_context(self.n)

    def X(self, i: int) -> SymbolicPoly:
        return self.context.gens()[i - 1]

    def Y(self, i: int) -> SymbolicPoly:
        return self.context.gens()[self.n + i - 1]


def ghost(p: int, coords, i: int) -> SymbolicPoly:
    """W_i(coords[0], ..., coords[i])."""
    return sum((p ** d * coords[d] ** (p ** (i - d)) for d in range(i + 1)), 0 * coords[0])


def _check_bounds(p: int, n: int) -> None:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"Witt length must be >= 1, got {n}")
    if n > _config.max_n():
        raise TruncationBoundError(f"length {n} exceeds WITTRAM_MAX_N={_config.max_n()}")
    if p > _config.max_p():
        raise TruncationBoundError(f"prime {p} exceeds WITTRAM_MAX_P={_config.max_p()}")


def _compute(p: int, n: int) -> SumPolynomialTable:
    ctx = witt_context(n)
    gens = ctx.gens()
    X, Y = gens[:n], gens[n:]
    S: list[SymbolicPoly] = []
    for i in range(1, n + 1):
        num = ctx.from_dict({})
        for d in range(1, i):
            e = p ** (i - d)
            num += p ** (d - 1) * (X[d - 1] ** e + Y[d - 1] ** e - S[d - 1] ** e)
        # the sum is divisible by p^(i-1) although its summands need not be
        S.append(X[i - 1] + Y[i - 1] + exact_divide(num, p ** (i - 1)))
    f = tuple(reduce_mod(S[i - 1] - Y[i - 1], p) for i in range(1, n + 1))
    g = tuple(f[i - 1] - X[i - 1] for i in range(1, n + 1))
    return SumPolynomialTable(p, n, tuple(S), f, g)


_cache: dict[tuple[int, int], SumPolynomialTable] = {}
_lock = threading.Lock()


def sum_polynomials(p: int, n: int) -> SumPolynomialTable:
    """The table (S_i, f_i, g_i) for length-n Witt vectors over Z and F_p; cached per (p, n)."""
    _check_bounds(p, n)
    key = (p, n)
    table = _cache.get(key)
    if table is not None:
        return table
    computed = _compute(p, n)
    with _lock:
        return _cache.setdefault(key, computed)
