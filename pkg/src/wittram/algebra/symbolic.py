"""Exact multivariate polynomials, backed by python-flint's ``fmpz_mpoly``.

Integer polynomials double as polynomials over F_p once their coefficients
are reduced into [0, p) with :func:`reduce_mod`.
"""

from __future__ import annotations

import functools

import flint

SymbolicPoly = flint.fmpz_mpoly


@functools.lru_cache(maxsize=None)
def context(names: tuple[str, ...]) -> flint.fmpz_mpoly_ctx:
    return flint.fmpz_mpoly_ctx.get(list(names), "lex")


@functools.lru_cache(maxsize=None)
def witt_context(n: int) -> flint.fmpz_mpoly_ctx:
    """Variables X1..Xn, Y1..Yn in that order."""
    return context(tuple(f"X{i}" for i in range(1, n + 1)) + tuple(f"Y{i}" for i in range(1, n + 1)))


def reduce_mod(poly: SymbolicPoly, p: int) -> SymbolicPoly:
    """Coefficients reduced into [0, p), zero terms dropped."""
    ctx = poly.context()
    return ctx.from_dict({m: int(c) % p for m, c in zip(poly.monoms(), poly.coeffs()) if int(c) % p})


def exact_divide(poly: SymbolicPoly, d: int) -> SymbolicPoly:
    """Divide by the integer d, raising ArithmeticError unless every coefficient is divisible."""
    for c in poly.coeffs():
        if int(c) % d:
            raise ArithmeticError(f"coefficient {c} is not divisible by {d}")
    return poly / d


def monomial_degrees(poly: SymbolicPoly) -> list[int]:
    return [sum(m) for m in poly.monoms()]


def used_variables(poly: SymbolicPoly) -> set[int]:
    """Indices of variables that occur with a positive exponent."""
    out: set[int] = set()
    for m in poly.monoms():
        out.update(i for i, e in enumerate(m) if e)
    return out


def evaluate(poly: SymbolicPoly, values, one, scale=None):
    """Evaluate at ring elements ``values`` (one per variable).

    ``one`` is the ring's unit; ``scale(elem, c)`` multiplies by an integer
    coefficient (defaults to ``elem * c``).  Powers of each value are cached.
    """
    if scale is None:
        def scale(elem, c):
            return elem * c
    cache: dict[tuple[int, int], object] = {}

    def power(i: int, e: int):
        key = (i, e)
        if key not in cache:
            if e == 1:
                cache[key] = values[i]
            else:
                half = power(i, e // 2)
                sq = half * half
                cache[key] = sq * values[i] if e % 2 else sq
        return cache[key]

    total = None
    for monom, c in zip(poly.monoms(), poly.coeffs()):
        term = one
        for i, e in enumerate(monom):
            if e:
                term = term * power(i, e)
        term = scale(term, int(c))
        total = term if total is None else total + term
    return scale(one, 0) if total is None else total
