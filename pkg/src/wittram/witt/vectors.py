"""Length-n Witt vectors with Laurent-polynomial coordinates.

Addition never expands the universal sum polynomials.  For slot i the sum is

    a_i + b_i + N / p^(i-1),   N = sum_{d<i} p^(d-1) (A_d^(p^e) + B_d^(p^e) - C_d^(p^e)),  e = i - d,

where A_d, B_d, C_d are lifts of a_d, b_d and the already computed sum
coordinate c_d to the Galois ring GR(p^n, f) = (Z/p^n)[z]/(modulus).  The
lifts are only defined mod p, but a = b mod p forces a^(p^e) = b^(p^e) mod
p^(e+1), so N is determined mod p^i and N / p^(i-1) mod p is well defined.
The symbolic tables in ``sums`` give an independent route used by the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .. import kernels
from ..algebra.fields import FieldError, FieldSpec, embedding
from ..algebra.laurent import LaurentPoly


class WittShapeError(ValueError):
    """Operands disagree in p, length or coefficient field."""


@dataclass(frozen=True)
class WittVector:
    field: FieldSpec
    coords: tuple[LaurentPoly, ...]

    def __post_init__(self):
        coords = tuple(self.coords)
        if not coords:
            raise WittShapeError("a Witt vector needs at least one coordinate")
        for c in coords:
            if not isinstance(c, LaurentPoly):
                raise TypeError(f"coordinates must be LaurentPoly, got {type(c).__name__}")
            if c.field != self.field:
                raise FieldError(f"coordinate over {c.field}, vector declared over {self.field}")
        object.__setattr__(self, "coords", coords)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def n(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> WittVector:
        return cls(field, tuple(LaurentPoly.zero(field) for _ in range(n)))

    @classmethod
    def from_terms(cls, field: FieldSpec, coords) -> WittVector:
        """From one {exponent: coefficient} mapping (or LaurentPoly) per coordinate."""
        return cls(field, tuple(c if isinstance(c, LaurentPoly) else LaurentPoly.from_terms(field, c)
                                for c in coords))

    @classmethod
    def single(cls, field: FieldSpec, n: int, slot: int, poly: LaurentPoly) -> WittVector:
        """The vector with ``poly`` in slot ``slot`` (1-based) and zeros elsewhere."""
        coords = [LaurentPoly.zero(field)] * n
        coords[slot - 1] = poly
        return cls(field, tuple(coords))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    @property
    def is_standard(self) -> bool:
        """Every coordinate is a polynomial without constant term and without exponents divisible by p."""
        for c in self.coords:
            if c.is_zero():
                continue
            if int(c.exps[0]) <= 0 or np.any(c.exps % self.p == 0):
                return False
        return True

    def __add__(self, other: WittVector) -> WittVector:
        return witt_add(self, other)

    def __neg__(self) -> WittVector:
        return witt_neg(self)

    def __sub__(self, other: WittVector) -> WittVector:
        return witt_add(self, witt_neg(other))

    def map_field(self, embed) -> WittVector:
        return WittVector(embed.dst, tuple(c.map_field(embed) for c in self.coords))

    def over(self, field: FieldSpec) -> WittVector:
        """The same vector with coefficients pushed into the larger ``field``."""
        if field == self.field:
            return self
        return self.map_field(embedding(self.field, field))

    def truncate_below(self, exp: int) -> WittVector:
        return WittVector(self.field, tuple(c.truncate_below(exp) for c in self.coords))

    def prefix(self, k: int) -> WittVector:
        """The first k coordinates (the image in W_k)."""
        return WittVector(self.field, self.coords[:k])

    def degree_bound(self) -> float:
        """max_d max(0, deg x_d) / p^(d-1): the weighted degree of the vector."""
        return max(max(0, c.degree) / self.p ** d for d, c in enumerate(self.coords) if not c.is_zero()) \
            if not self.is_zero() else 0.0

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "field": self.field.to_json(),
            "coords": [c.to_json() for c in self.coords],
            "standard_form": self.is_standard,
        }

    @classmethod
    def from_json(cls, data: dict) -> WittVector:
        field = FieldSpec.from_json(data["field"])
        vec = cls(field, tuple(LaurentPoly.from_json(field, c) for c in data["coords"]))
        if int(data.get("p", field.p)) != field.p or int(data.get("n", vec.n)) != vec.n:
            raise WittShapeError("p or n in the JSON disagree with the field and coordinates")
        if data.get("standard_form") and not vec.is_standard:
            raise WittShapeError("vector is flagged as standard form but is not")
        return vec

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


# ---------------------------------------------------------------------------
# lifted arithmetic over GR(p^k, f)[x, 1/x]

class _Lift:
    """Sparse Laurent polynomial with coefficients in GR(pk, f); exponents below ``floor`` are dropped."""

    __slots__ = ("exps", "coeffs", "pk", "modulus", "floor")

    def __init__(self, exps, coeffs, pk, modulus, floor):
        if floor is not None and exps.shape[0] and exps[0] < floor:
            keep = exps >= floor
            exps, coeffs = exps[keep], coeffs[keep]
        self.exps = exps
        self.coeffs = coeffs
        self.pk = pk
        self.modulus = modulus
        self.floor = floor

    def _new(self, exps, coeffs) -> _Lift:
        return _Lift(exps, coeffs, self.pk, self.modulus, self.floor)

    def __add__(self, other: _Lift) -> _Lift:
        return self._new(*kernels.sparse_add(self.exps, self.coeffs, other.exps, other.coeffs, self.pk))

    def __sub__(self, other: _Lift) -> _Lift:
        neg = (-other.coeffs) % self.pk
        return self._new(*kernels.sparse_add(self.exps, self.coeffs, other.exps, neg, self.pk))

    def __mul__(self, other: _Lift) -> _Lift:
        return self._new(*kernels.sparse_mul(self.exps, self.coeffs, other.exps, other.coeffs,
                                             self.modulus, self.pk))

    def times_int(self, k: int) -> _Lift:
        c = (self.coeffs * (k % self.pk)) % self.pk
        keep = c.any(axis=1)
        return self._new(self.exps[keep], c[keep])

    def power_p(self, p: int) -> _Lift:
        result, base, e = None, self, p
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result


def _lift(poly: LaurentPoly, pk: int, floor) -> _Lift:
    return _Lift(np.array(poly.exps), np.array(poly.coeffs), pk, poly.field.modulus_array(), floor)


def _frobenius_tower(lift: _Lift, p: int, count: int) -> list[_Lift]:
    """[lift, lift^p, lift^(p^2), ..., lift^(p^count)]."""
    out = [lift]
    for _ in range(count):
        prev = out[-1]
        out.append(prev if prev.exps.shape[0] == 0 else prev.power_p(p))
    return out


def _carry(towers_a, towers_b, towers_c, i: int, p: int, exact: bool) -> tuple[np.ndarray, np.ndarray]:
    """N / p^(i-1) mod p for slot i, as an (exps, coeffs) pair over F_p coordinates.

    Without truncation N must be divisible by p^(i-1) and anything else is a
    bug.  With truncation the dropped terms leave non-divisible residue at
    exponents far below the trusted range, so the check is skipped there.
    """
    total = None
    for d in range(1, i):
        e = i - d
        part = towers_a[d - 1][e] + towers_b[d - 1][e] - towers_c[d - 1][e]
        part = part.times_int(p ** (d - 1))
        total = part if total is None else total + part
    if total is None or total.exps.shape[0] == 0:
        f = towers_a[0][0].modulus.shape[0] - 1
        return np.zeros(0, np.int64), np.zeros((0, f), np.int64)
    div = p ** (i - 1)
    if exact and np.any(total.coeffs % div):
        raise ArithmeticError(f"Witt carry for slot {i} is not divisible by {div}")
    coeffs = (total.coeffs // div) % p
    keep = coeffs.any(axis=1)
    return np.ascontiguousarray(total.exps[keep]), np.ascontiguousarray(coeffs[keep])


def _check_pair(a: WittVector, b: WittVector) -> None:
    if not isinstance(a, WittVector) or not isinstance(b, WittVector):
        raise TypeError("witt operations take WittVector operands")
    if a.n != b.n:
        raise WittShapeError(f"length mismatch: {a.n} vs {b.n}")
    if a.field != b.field:
        raise WittShapeError(f"field mismatch: {a.field} vs {b.field}")


def _sum_slotwise(a: WittVector, b_coords: list, floor, solve_b: bool):
    """Shared loop of addition and negation.

    With ``solve_b`` false this returns the coordinates of a +' b.  With it
    true, slot i of b is chosen so that slot i of the sum vanishes, which
    builds -a one coordinate at a time.
    """
    p, n, fld = a.p, a.n, a.field
    pk = p ** n
    towers_a = [_frobenius_tower(_lift(c, pk, floor), p, n - d - 1) for d, c in enumerate(a.coords)]
    towers_b, towers_c, result = [], [], []
    for i in range(1, n + 1):
        exps, coeffs = _carry(towers_a, towers_b, towers_c, i, p, floor is None)
        carry = LaurentPoly(fld, exps, coeffs, _normalized=True)
        partial = a.coords[i - 1] + carry
        if solve_b:
            b_i = -partial
            b_coords.append(b_i)
            c_i = LaurentPoly.zero(fld)
        else:
            b_i = b_coords[i - 1]
            c_i = partial + b_i
        if floor is not None:
            c_i = c_i.truncate_below(floor)
            b_i = b_i.truncate_below(floor)
        result.append(c_i)
        if i < n:
            towers_b.append(_frobenius_tower(_lift(b_i, pk, floor), p, n - i))
            towers_c.append(_frobenius_tower(_lift(c_i, pk, floor), p, n - i))
    return result


def witt_add(a: WittVector, b: WittVector, floor: int | None = None) -> WittVector:
    """a +' b.  With ``floor`` set, terms with exponent below it are discarded along the way."""
    _check_pair(a, b)
    return WittVector(a.field, tuple(_sum_slotwise(a, list(b.coords), floor, solve_b=False)))


def witt_neg(a: WittVector, floor: int | None = None) -> WittVector:
    """The additive inverse.  For odd p this is coordinate-wise negation."""
    if a.p != 2:
        return WittVector(a.field, tuple(-c for c in a.coords))
    b: list[LaurentPoly] = []
    _sum_slotwise(a, b, floor, solve_b=True)
    return WittVector(a.field, tuple(b))


def witt_int_scale(b: int, a: WittVector, floor: int | None = None) -> WittVector:
    """a added to itself (b mod p^n) times, by binary doubling."""
    k = b % a.p ** a.n
    result = WittVector.zero(a.field, a.n)
    base = a
    while k:
        if k & 1:
            result = witt_add(result, base, floor)
        k >>= 1
        if k:
            base = witt_add(base, base, floor)
    return result


def witt_frobenius(a: WittVector) -> WittVector:
    """Coordinate-wise p-th power."""
    return WittVector(a.field, tuple(c.frobenius() for c in a.coords))


def witt_wp(a: WittVector, floor: int | None = None) -> WittVector:
    """The Artin-Schreier-Witt operator Fr - Id."""
    return witt_add(witt_frobenius(a), witt_neg(a, floor), floor)


def truncation_floor(precision: int, *vectors: WittVector) -> int:
    """Exponent below which terms may be dropped without disturbing exponents >= -precision.

    Every monomial of a sum polynomial for slot i is isobaric of weight
    p^(i-1) when X_d, Y_d have weight p^(d-1).  A product with one factor
    below the floor therefore stays below floor + D p^(n-1), where D bounds
    deg(x_d) / p^(d-1) over all operands.  Pass every vector that enters
    the computation: for witt_wp(a) that is Fr(a) as well as a.
    """
    if not vectors:
        raise ValueError("need at least one vector")
    p, n = vectors[0].p, vectors[0].n
    bound = max(v.degree_bound() for v in vectors)
    return -(precision + math.ceil(bound * p ** (n - 1)) + 1)
