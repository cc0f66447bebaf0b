"""Finite fields F_q = F_p[z]/(modulus) with a deterministic choice of modulus.

Elements are stored as coordinate tuples in the power basis 1, z, ..., z^(f-1).
The integer ``index`` of an element is sum(coords[k] * p**k); it is the order
used whenever something has to be chosen "smallest first".
"""

from __future__ import annotations

import functools
import threading
from dataclasses import dataclass

import flint
import numpy as np
from sympy.ntheory import factorint, isprime

# largest field for which index tables are materialised
MAX_TABLE_ORDER = 1 << 22


class FieldError(ValueError):
    """Invalid field request (non-prime characteristic, root of unity missing, ...)."""


def _poly_mulmod(a: tuple[int, ...], b: tuple[int, ...], modulus: tuple[int, ...], p: int) -> tuple[int, ...]:
    f = len(modulus) - 1
    prod = [0] * (2 * f - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    for d in range(2 * f - 2, f - 1, -1):
        lead = prod[d] % p
        if lead:
            for s in range(f):
                prod[d - f + s] -= lead * modulus[s]
        prod[d] = 0
    return tuple(c % p for c in prod[:f])


def _is_irreducible(coeffs: list[int], p: int) -> bool:
    _, factors = flint.nmod_poly(coeffs, p).factor()
    return len(factors) == 1 and factors[0][1] == 1 and factors[0][0].degree() == len(coeffs) - 1


@functools.lru_cache(maxsize=None)
def _smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    if f == 1:
        return (0, 1)
    # tails ordered by their base-p value, i.e. lexicographically on (a_{f-1}, ..., a_0)
    for value in range(p ** f):
        tail = [(value // p ** k) % p for k in range(f)]
        if tail[0] == 0:
            continue
        if _is_irreducible(tail + [1], p):
            return tuple(tail) + (1,)
    raise AssertionError(f"no irreducible polynomial of degree {f} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """F_q as F_p[z]/(modulus); ``modulus`` is listed constant term first and is monic."""

    p: int
    f: int
    modulus: tuple[int, ...]

    def __post_init__(self):
        if not isprime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.f < 1 or len(self.modulus) != self.f + 1 or self.modulus[-1] != 1:
            raise FieldError(f"modulus {self.modulus} is not monic of degree {self.f}")
        if any(not 0 <= c < self.p for c in self.modulus):
            raise FieldError("modulus coefficients must lie in [0, p)")
        if self.f > 1 and not _is_irreducible(list(self.modulus), self.p):
            raise FieldError(f"modulus {self.modulus} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p ** self.f

    @property
    def is_prime_field(self) -> bool:
        return self.f == 1

    def __str__(self) -> str:
        return f"F_{self.q}"

    # element construction ---------------------------------------------------
    def element(self, value) -> FqElement:
        """Build an element from an int (prime-subfield image) or a coordinate list."""
        if isinstance(value, FqElement):
            if value.field != self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value
        if isinstance(value, (int, np.integer)):
            return FqElement(self, (int(value) % self.p,) + (0,) * (self.f - 1))
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) != self.f:
            raise FieldError(f"expected {self.f} coordinates, got {len(coords)}")
        return FqElement(self, coords)

    def from_index(self, index: int) -> FqElement:
        if not 0 <= index < self.q:
            raise FieldError(f"index {index} out of range for {self}")
        return FqElement(self, tuple((index // self.p ** k) % self.p for k in range(self.f)))

    @property
    def zero(self) -> FqElement:
        return FqElement(self, (0,) * self.f)

    @property
    def one(self) -> FqElement:
        return self.element(1)

    @property
    def gen(self) -> FqElement:
        """The class of z (equal to -modulus[0] in a prime field)."""
        if self.f == 1:
            return self.element(-self.modulus[0])
        return FqElement(self, (0, 1) + (0,) * (self.f - 2))

    def elements(self):
        for index in range(self.q):
            yield self.from_index(index)

    def modulus_array(self) -> np.ndarray:
        return np.asarray(self.modulus, dtype=np.int64)

    def to_json(self) -> dict:
        return {"p": self.p, "f": self.f, "modulus": list(self.modulus)}

    @classmethod
    def from_json(cls, data: dict) -> FieldSpec:
        return cls(int(data["p"]), int(data["f"]), tuple(int(c) for c in data["modulus"]))


@dataclass(frozen=True)
class FqElement:
    field: FieldSpec
    coords: tuple[int, ...]

    def _coerce(self, other) -> FqElement:
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise FieldError(f"cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, (int, np.integer)):
            return self.field.element(int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElement(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElement(self.field, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        fld = self.field
        if fld.f == 1:
            return FqElement(fld, ((self.coords[0] * other.coords[0]) % fld.p,))
        return FqElement(fld, _poly_mulmod(self.coords, other.coords, fld.modulus, fld.p))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FqElement:
        e = int(e)
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> FqElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def index(self) -> int:
        return sum(c * self.field.p ** k for k, c in enumerate(self.coords))

    def order(self) -> int:
        """Multiplicative order."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        n = self.field.q - 1
        for r, k in factorint(n).items():
            for _ in range(k):
                if (self ** (n // r)) == self.field.one:
                    n //= r
                else:
                    break
        return n

    def to_json(self) -> list[int]:
        return list(self.coords)

    def __str__(self) -> str:
        if self.field.f == 1:
            return str(self.coords[0])
        parts = []
        for k in range(self.field.f - 1, -1, -1):
            c = self.coords[k]
            if not c:
                continue
            mono = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
            if k == 0:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"FqElement({self.field}, {list(self.coords)})"


def fq_construct(p: int, f: int) -> FieldSpec:
    """F_{p^f} with the smallest irreducible monic modulus of degree f."""
    if not isinstance(p, (int, np.integer)) or not isprime(int(p)):
        raise FieldError(f"characteristic {p} is not prime")
    if f < 1:
        raise FieldError(f"extension degree must be >= 1, got {f}")
    return FieldSpec(int(p), int(f), _smallest_irreducible(int(p), int(f)))


@functools.lru_cache(maxsize=None)
def primitive_element(field: FieldSpec) -> FqElement:
    """Smallest-index generator of the multiplicative group."""
    n = field.q - 1
    if n == 1:
        return field.one
    primes = list(factorint(n))
    for index in range(1, field.q):
        g = field.from_index(index)
        if all(g ** (n // r) != field.one for r in primes):
            return g
    raise AssertionError("multiplicative group of a finite field is cyclic")


def fq_root_of_unity(field: FieldSpec, m: int) -> FqElement:
    """Element of exact order m, namely g^((q-1)/m) for the smallest generator g."""
    if m < 1:
        raise FieldError(f"order must be positive, got {m}")
    if (field.q - 1) % m:
        raise FieldError(f"{field} has no primitive {m}-th root of unity; use a larger field")
    return primitive_element(field) ** ((field.q - 1) // m)


def fq_pth_root(a: FqElement) -> FqElement:
    """Unique b with b^p = a."""
    if a.field.f == 1:
        return a
    return a ** (a.field.q // a.field.p)


# ---------------------------------------------------------------------------
# vectorised helpers on index/coordinate arrays

class _Tables:
    def __init__(self, field: FieldSpec):
        self.powers = field.p ** np.arange(field.f, dtype=np.int64)
        if field.q > MAX_TABLE_ORDER:
            self.frobenius = None
            return
        coords = _all_coords(field)
        self.frobenius = to_index(field, _vec_pow(field, coords, field.p))


def _all_coords(field: FieldSpec) -> np.ndarray:
    idx = np.arange(field.q, dtype=np.int64)
    return np.stack([(idx // field.p ** k) % field.p for k in range(field.f)], axis=1)


def _vec_mul(field: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    p, f = field.p, field.f
    prod = np.zeros(a.shape[:-1] + (2 * f - 1,), dtype=np.int64)
    for i in range(f):
        prod[..., i:i + f] += a[..., i:i + 1] * b
    prod %= p
    mod = field.modulus_array()
    for d in range(2 * f - 2, f - 1, -1):
        lead = prod[..., d].copy()
        prod[..., d] = 0
        prod[..., d - f:d] = (prod[..., d - f:d] - lead[..., None] * mod[:f]) % p
    return prod[..., :f]


def _vec_pow(field: FieldSpec, a: np.ndarray, e: int) -> np.ndarray:
    result = np.zeros_like(a)
    result[..., 0] = 1
    base = a
    while e:
        if e & 1:
            result = _vec_mul(field, result, base)
        base = _vec_mul(field, base, base)
        e >>= 1
    return result


_tables_lock = threading.Lock()
_tables_cache: dict[FieldSpec, _Tables] = {}


def tables(field: FieldSpec) -> _Tables:
    with _tables_lock:
        t = _tables_cache.get(field)
        if t is None:
            t = _tables_cache[field] = _Tables(field)
        return t


def to_index(field: FieldSpec, coords: np.ndarray) -> np.ndarray:
    return coords @ (field.p ** np.arange(field.f, dtype=np.int64))


def from_index(field: FieldSpec, index: np.ndarray) -> np.ndarray:
    index = np.asarray(index, dtype=np.int64)
    return np.stack([(index // field.p ** k) % field.p for k in range(field.f)], axis=-1)


def frobenius_coords(field: FieldSpec, coords: np.ndarray) -> np.ndarray:
    """Apply c -> c^p row-wise to an (k, f) coordinate array."""
    if field.f == 1:
        return coords.copy()
    t = tables(field)
    if t.frobenius is None:
        return _vec_pow(field, coords, field.p)
    return from_index(field, t.frobenius[to_index(field, coords)])


def mul_coords(field: FieldSpec, coords: np.ndarray, c: FqElement) -> np.ndarray:
    """Multiply every row of an (k, f) coordinate array by the scalar c."""
    return _vec_mul(field, coords, np.asarray(c.coords, dtype=np.int64))


# ---------------------------------------------------------------------------
# embeddings and Artin-Schreier roots

@dataclass(frozen=True)
class Embedding:
    """Field homomorphism src -> dst sending z to ``image_of_gen``."""

    src: FieldSpec
    dst: FieldSpec
    image_of_gen: FqElement

    def __call__(self, a: FqElement) -> FqElement:
        if a.field != self.src:
            raise FieldError(f"embedding expects an element of {self.src}")
        result = self.dst.zero
        power = self.dst.one
        for c in a.coords:
            if c:
                result = result + power * c
            power = power * self.image_of_gen
        return result

    def map_coords(self, coords: np.ndarray) -> np.ndarray:
        """Map an (k, src.f) coordinate array to (k, dst.f)."""
        basis = [self.dst.one]
        for _ in range(1, self.src.f):
            basis.append(basis[-1] * self.image_of_gen)
        basis_arr = np.asarray([b.coords for b in basis], dtype=np.int64)
        return (coords @ basis_arr) % self.dst.p


def _flint_context(field: FieldSpec):
    return flint.fq_default_ctx(field.p, modulus=flint.fmpz_mod_poly_ctx(field.p)(list(field.modulus)))


@functools.lru_cache(maxsize=None)
def embedding(src: FieldSpec, dst: FieldSpec) -> Embedding:
    """Embedding src -> dst using the smallest-index root of src.modulus in dst."""
    if src.p != dst.p or dst.f % src.f:
        raise FieldError(f"{src} does not embed in {dst}")
    if src == dst:
        return Embedding(src, dst, dst.gen)
    if src.f == 1:
        return Embedding(src, dst, dst.element(-src.modulus[0]))
    ctx = _flint_context(dst)
    roots = flint.fq_default_poly_ctx(ctx)([ctx(c) for c in src.modulus]).roots()
    if not roots:
        raise AssertionError("irreducible polynomial of degree f has no root in F_{p^(f k)}")
    images = [dst.element(list(r.to_list()) + [0] * (dst.f - len(r.to_list()))) for r, _ in roots]
    return Embedding(src, dst, min(images, key=lambda e: e.index))


def extension_field(field: FieldSpec, degree: int) -> tuple[FieldSpec, Embedding]:
    """The field of degree ``degree`` over ``field`` (as fq_construct(p, f*degree)) with its embedding."""
    big = fq_construct(field.p, field.f * degree)
    return big, embedding(field, big)


def _solve_mod_p(matrix: list[list[int]], rhs: list[int], p: int) -> list[int] | None:
    """One solution of matrix @ x = rhs over F_p (free variables set to 0), or None."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c] % p), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [(v * inv) % p for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] % p:
                factor = aug[i][c]
                aug[i] = [(vi - factor * vr) % p for vi, vr in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    if any(aug[i][cols] % p for i in range(r, rows)):
        return None
    x = [0] * cols
    for i, c in enumerate(pivots):
        x[c] = aug[i][cols]
    return x


def artin_schreier_root(c: FqElement) -> FqElement | None:
    """Smallest-index z with z^p - z = c, or None when c is not in the image of z^p - z."""
    fld = c.field
    p, f = fld.p, fld.f
    basis = [fld.from_index(p ** k) for k in range(f)]
    columns = [(b ** p - b).coords for b in basis]
    matrix = [[columns[j][i] for j in range(f)] for i in range(f)]
    sol = _solve_mod_p(matrix, list(c.coords), p)
    if sol is None:
        return None
    z0 = fld.element(sol)
    # the solution set is z0 + F_p
    return min((z0 + t for t in range(p)), key=lambda z: z.index)

