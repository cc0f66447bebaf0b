"""Sparse Laurent polynomials in x over a finite field.

The valuation follows the convention of L_0 = k((x^-1)): the uniformiser is
x^-1, so v_0(x^d) = -d and v_0 of a polynomial is minus its degree.
"""

from __future__ import annotations

import math

import numpy as np

from .. import kernels
from .fields import FieldError, FieldSpec, FqElement, frobenius_coords, mul_coords

INFINITY = math.inf


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


class LaurentPoly:
    """Immutable sparse Laurent polynomial; exponents ascending, no zero coefficients."""

    __slots__ = ("field", "exps", "coeffs", "_hash")

    def __init__(self, field: FieldSpec, exps, coeffs, *, _normalized: bool = False):
        self.field = field
        if _normalized:
            self.exps = _frozen(exps)
            self.coeffs = _frozen(coeffs)
        else:
            exps = np.asarray(exps, dtype=np.int64).reshape(-1)
            coeffs = np.asarray(coeffs, dtype=np.int64).reshape(len(exps), field.f) % field.p
            e, c = _sorted_merge(exps, coeffs, field.p)
            self.exps = _frozen(e)
            self.coeffs = _frozen(c)
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, field: FieldSpec) -> LaurentPoly:
        return cls(field, np.zeros(0, np.int64), np.zeros((0, field.f), np.int64), _normalized=True)

    @classmethod
    def monomial(cls, field: FieldSpec, exp: int, coeff=1) -> LaurentPoly:
        c = field.element(coeff)
        if c.is_zero():
            return cls.zero(field)
        return cls(field, [exp], [c.coords], _normalized=True)

    @classmethod
    def constant(cls, field: FieldSpec, coeff) -> LaurentPoly:
        return cls.monomial(field, 0, coeff)

    @classmethod
    def from_terms(cls, field: FieldSpec, terms) -> LaurentPoly:
        """From a mapping or iterable of (exponent, coefficient) pairs; repeated exponents add up."""
        items = terms.items() if hasattr(terms, "items") else terms
        exps, coeffs = [], []
        for e, c in items:
            exps.append(int(e))
            coeffs.append(field.element(c).coords)
        if not exps:
            return cls.zero(field)
        return cls(field, exps, coeffs)

    def _new(self, exps, coeffs) -> LaurentPoly:
        return LaurentPoly(self.field, exps, coeffs, _normalized=True)

    # inspection -----------------------------------------------------------
    def __len__(self) -> int:
        return int(self.exps.shape[0])

    def is_zero(self) -> bool:
        return self.exps.shape[0] == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def terms(self):
        """Yield (exponent, FqElement) in ascending exponent order."""
        for e, c in zip(self.exps.tolist(), self.coeffs.tolist()):
            yield e, FqElement(self.field, tuple(c))

    def coefficient(self, exp: int) -> FqElement:
        pos = np.searchsorted(self.exps, exp)
        if pos < len(self.exps) and self.exps[pos] == exp:
            return FqElement(self.field, tuple(self.coeffs[pos].tolist()))
        return self.field.zero

    @property
    def degree(self) -> float:
        """Largest exponent; -inf for the zero polynomial."""
        return int(self.exps[-1]) if len(self.exps) else -INFINITY

    @property
    def min_exp(self) -> float:
        return int(self.exps[0]) if len(self.exps) else INFINITY

    def valuation(self) -> float:
        """v_0 = -degree, +inf for zero."""
        return -int(self.exps[-1]) if len(self.exps) else INFINITY

    def leading_coefficient(self) -> FqElement:
        if self.is_zero():
            return self.field.zero
        return FqElement(self.field, tuple(self.coeffs[-1].tolist()))

    def is_polynomial(self) -> bool:
        return self.is_zero() or int(self.exps[0]) >= 0

    # arithmetic -----------------------------------------------------------
    def _check(self, other: LaurentPoly) -> None:
        if not isinstance(other, LaurentPoly):
            raise TypeError(f"expected LaurentPoly, got {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        self._check(other)
        return self._new(*kernels.sparse_add(self.exps, self.coeffs, other.exps, other.coeffs, self.field.p))

    def __neg__(self) -> LaurentPoly:
        return self._new(self.exps, (-self.coeffs) % self.field.p)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, (FqElement, int, np.integer)):
            return self.scale(other)
        self._check(other)
        fld = self.field
        return self._new(*kernels.sparse_mul(
            self.exps, self.coeffs, other.exps, other.coeffs, fld.modulus_array(), fld.p))

    def __rmul__(self, other) -> LaurentPoly:
        return self.scale(other)

    def __pow__(self, e: int) -> LaurentPoly:
        if e < 0:
            raise ValueError("negative powers of Laurent polynomials are not supported")
        result = LaurentPoly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> LaurentPoly:
        c = self.field.element(c)
        if c.is_zero():
            return LaurentPoly.zero(self.field)
        return self._new(self.exps, mul_coords(self.field, self.coeffs, c))

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by x^k."""
        return self._new(self.exps + k, self.coeffs)

    def frobenius(self) -> LaurentPoly:
        """p-th power: coefficients to c^p, exponents times p."""
        return self._new(self.exps * self.field.p, frobenius_coords(self.field, self.coeffs))

    def substitute(self, zeta: FqElement, d: int = 1) -> LaurentPoly:
        """Image under x -> zeta^d x: the coefficient at exponent e is multiplied by zeta^(d e)."""
        zeta = self.field.element(zeta)
        if self.is_zero():
            return self
        rows = [mul_coords(self.field, self.coeffs[i:i + 1], zeta ** (d * int(e)))
                for i, e in enumerate(self.exps)]
        return self._new(self.exps, np.concatenate(rows))

    def truncate_below(self, exp: int) -> LaurentPoly:
        """Drop all terms with exponent < exp."""
        keep = self.exps >= exp
        return self._new(self.exps[keep], self.coeffs[keep])

    def select(self, mask) -> LaurentPoly:
        mask = np.asarray(mask, dtype=bool)
        return self._new(self.exps[mask], self.coeffs[mask])

    def positive_part(self) -> LaurentPoly:
        return self.select(self.exps > 0)

    def negative_part(self) -> LaurentPoly:
        return self.select(self.exps < 0)

    def constant_term(self) -> FqElement:
        return self.coefficient(0)

    def map_field(self, embed) -> LaurentPoly:
        """Push coefficients through a field embedding."""
        return LaurentPoly(embed.dst, self.exps, embed.map_coords(self.coeffs), _normalized=True)

    # comparison / serialisation -------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (self.field == other.field and np.array_equal(self.exps, other.exps)
                and np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, self.exps.tobytes(), self.coeffs.tobytes()))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple((e, tuple(c)) for e, c in zip(self.exps.tolist(), self.coeffs.tolist()))

    def to_json(self) -> list[dict]:
        return [{"exp": e, "coeff": c} for e, c in zip(self.exps.tolist(), self.coeffs.tolist())]

    @classmethod
    def from_json(cls, field: FieldSpec, data) -> LaurentPoly:
        return cls.from_terms(field, [(t["exp"], t["coeff"]) for t in data])

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for e, c in reversed(list(self.terms())):
            cs = str(c)
            if self.field.f > 1 and "+" in cs:
                cs = f"({cs})"
            if e == 0:
                parts.append(cs)
                continue
            mono = "x" if e == 1 else f"x^{e}"
            parts.append(mono if cs == "1" else f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.field}, {self})"


def _sorted_merge(exps: np.ndarray, coeffs: np.ndarray, p: int):
    """Sort and combine duplicate exponents of raw input."""
    if exps.shape[0] == 0:
        return exps, coeffs
    uniq, inv = np.unique(exps, return_inverse=True)
    acc = np.zeros((uniq.shape[0], coeffs.shape[1]), dtype=np.int64)
    np.add.at(acc, inv.ravel(), coeffs)
    acc %= p
    keep = acc.any(axis=1)
    return uniq[keep], acc[keep]
