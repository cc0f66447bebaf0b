"""Construction of G-Galois extensions with a prescribed ramification filtration.

An extension is recorded as data: the group, the coefficient field, a
standard-form Witt vector (x_1, ..., x_n) over L_0 = K[x]/(x^m - 1/t), and the
tame action c(x) = zeta^beta x where zeta is a fixed primitive m-th root of
unity and zeta^(beta j) = alpha^-1 for j = m u_1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from sympy import totient
from sympy.ntheory import n_order

from .algebra.fields import FieldSpec, fq_construct, fq_root_of_unity
from .algebra.laurent import LaurentPoly
from .groups import GroupSpec, teichmuller_lift
from .ramification import (ProfileError, RamificationProfile, Violation, _as_fraction, upper_jumps_from_witt,
                           validate_profile)
from .witt.vectors import WittVector


class InvalidProfileError(ProfileError):
    """Raised with the validator's complete list of violations."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))


def field_for_roots_of_unity(p: int, order: int) -> FieldSpec:
    """Smallest F_{p^f} containing the order-th roots of unity (f = ord_order(p))."""
    f = 1 if order == 1 else int(n_order(p, order))
    return fq_construct(p, f)


def required_field(group: GroupSpec) -> FieldSpec:
    """F_q with q = p^f, f the order of p modulo m/m'."""
    return field_for_roots_of_unity(group.p, group.quotient_order)


def tame_field(group: GroupSpec) -> FieldSpec:
    """A field holding the primitive m-th root of unity zeta itself."""
    return field_for_roots_of_unity(group.p, group.m)


def tame_beta(group: GroupSpec, j: int) -> int:
    """Least positive beta, prime to m, with zeta^(beta j) = alpha^-1.

    beta must be prime to m so that c(x) = zeta^beta x has order exactly m.
    """
    fld = tame_field(group)
    zeta = fq_root_of_unity(fld, group.m)
    target = fld.element(pow(group.alpha, -1, group.p))
    base = zeta ** j
    for beta in range(1, group.m + 1):
        if math.gcd(beta, group.m) == 1 and base ** beta == target:
            return beta
    raise ProfileError(f"no beta with zeta^(beta*{j}) = alpha^-1: gcd(m, j) differs from m'")


@dataclass(frozen=True)
class ExtensionDescription:
    group: GroupSpec
    field: FieldSpec
    witt: WittVector
    beta: int
    profile: RamificationProfile

    @property
    def j_mod_m(self) -> int:
        return self.profile.w[0] % self.group.m

    def to_json(self) -> dict:
        return {
            "group": self.group.to_json(),
            "field": self.field.to_json(),
            "witt": self.witt.to_json(),
            "tame": {"j_mod_m": self.j_mod_m, "beta": self.beta},
            "profile": self.profile.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> ExtensionDescription:
        group = GroupSpec.from_json(data["group"])
        field = FieldSpec.from_json(data["field"])
        witt = WittVector.from_json(data["witt"])
        profile = upper_jumps_from_witt(witt, group.m)
        if "profile" in data and RamificationProfile.from_json(data["profile"]) != profile:
            raise ProfileError("stored profile disagrees with the jumps of the Witt vector")
        return cls(group, field, witt, int(data["tame"]["beta"]), profile)


def _monomial(field: FieldSpec, exp: int) -> LaurentPoly:
    return LaurentPoly.monomial(field, exp, 1)


def _level_violations(group: GroupSpec, u_prev: Fraction, w1: int, u_n: Fraction, index: int) -> list[Violation]:
    """Conditions (a), (c), (d) for a single new jump u_n after u_prev."""
    p, m = group.p, group.m
    out = []
    w_n = u_n * m
    if w_n.denominator != 1 or w_n <= 0:
        return [Violation("a", index, f"u_{index} = {u_n} is not in (1/{m})N")]
    w_n = int(w_n)
    if u_n < p * u_prev:
        out.append(Violation("c", index, f"u_{index} = {u_n} < p u_{index - 1} = {p * u_prev}"))
    elif u_n > p * u_prev and w_n % p == 0:
        out.append(Violation("c", index, f"p = {p} divides m u_{index} = {w_n}"))
    if (w_n - w1) % m:
        out.append(Violation("d", index, f"m u_{index} = {w_n} is not congruent to m u_1 = {w1} mod {m}"))
    return out


def dominate(ext: ExtensionDescription, u_n) -> ExtensionDescription:
    """Extend by one level with last upper jump u_n: x_n = x^(m u_n), or 0 when u_n = p u_(n-1)."""
    g = ext.group
    u_n = _as_fraction(u_n)
    n = g.n + 1
    u_prev = ext.profile.u[-1]
    violations = _level_violations(g, u_prev, ext.profile.w[0], u_n, n)
    if violations:
        raise InvalidProfileError(violations)
    w_n = int(u_n * g.m)
    x_n = LaurentPoly.zero(ext.field) if u_n == g.p * u_prev else _monomial(ext.field, w_n)
    group = GroupSpec(g.p, n, g.m, teichmuller_lift(g.alpha, g.p, n))
    witt = WittVector(ext.field, ext.witt.coords + (x_n,))
    profile = upper_jumps_from_witt(witt, g.m)
    if profile.truncate(g.n) != ext.profile or profile.u[-1] != u_n:
        raise AssertionError(f"domination produced jumps {profile}")
    return ExtensionDescription(group, ext.field, witt, ext.beta, profile)


def _require_valid(group: GroupSpec, u) -> list[Fraction]:
    u = [_as_fraction(x) for x in u]
    violations = validate_profile(group, u)
    if violations:
        raise InvalidProfileError(violations)
    return u


def _base_level(group: GroupSpec, field: FieldSpec, x_1: LaurentPoly) -> ExtensionDescription:
    g1 = GroupSpec(group.p, 1, group.m, group.alpha)
    witt = WittVector(field, (x_1,))
    profile = upper_jumps_from_witt(witt, group.m)
    return ExtensionDescription(g1, field, witt, tame_beta(group, profile.w[0]), profile)


def synthesize(group: GroupSpec, u) -> ExtensionDescription:
    """An extension with upper jumps u: x_1 = x^(m u_1), then one domination step per further jump."""
    u = _require_valid(group, u)
    field = required_field(group)
    ext = _base_level(group, field, _monomial(field, int(u[0] * group.m)))
    for u_i in u[1:]:
        ext = dominate(ext, u_i)
    if ext.group != group:
        raise AssertionError(f"synthesized group {ext.group} differs from {group}")
    return ext


def check_equivariance(ext: ExtensionDescription) -> bool:
    """Every exponent of every x_i is congruent to j = m u_1 modulo m."""
    m = ext.group.m
    j = ext.profile.w[0]
    return all(not np.any((c.exps - j) % m) for c in ext.witt.coords)


# ---------------------------------------------------------------------------
# moduli dimension

def epsilon_brute(w: int, m: int, p: int) -> int:
    """#{e : 1 <= e <= w, e = w mod m, p does not divide e}, by enumeration."""
    return sum(1 for e in range(1, w + 1) if (e - w) % m == 0 and e % p)


def delta_p(w: int, m: int, p: int) -> int:
    """1 iff w = a p mod m for some 1 <= a <= r, where r = floor(w/p) mod m."""
    r = (w // p) % m
    return int(any((w - a * p) % m == 0 for a in range(1, r + 1)))


def epsilon_count(w: int, m: int, p: int) -> int:
    """Closed form ceil(w/m) - floor(w/(m p)) - delta_p(w, m)."""
    if math.gcd(p, m) != 1:
        raise ValueError(f"gcd(p, m) = gcd({p}, {m}) must be 1")
    if w < 1 or m < 1:
        raise ValueError("w and m must be positive")
    return -(-w // m) - w // (m * p) - delta_p(w, m, p)


@dataclass(frozen=True)
class DimensionReport:
    epsilons: tuple[int, ...]
    covering_degree: int
    quotient_order: int

    @property
    def n_eta(self) -> int:
        return sum(self.epsilons)

    def to_json(self) -> dict:
        return {"epsilons": list(self.epsilons), "N_eta": self.n_eta,
                "covering_degree": self.covering_degree, "quotient_order": self.quotient_order}


def moduli_dimension(group: GroupSpec, u) -> DimensionReport:
    u = _require_valid(group, u)
    eps = tuple(epsilon_count(int(x * group.m), group.m, group.p) for x in u)
    degree = int(totient(group.m)) // int(totient(group.quotient_order))
    return DimensionReport(eps, degree, group.quotient_order)


def admissible_exponents(w: int, w1: int, m: int, p: int) -> list[int]:
    """{e : 1 <= e <= w, e = w1 mod m, p does not divide e}, ascending."""
    return [e for e in range(1, w + 1) if (e - w1) % m == 0 and e % p]


def sample_extension(group: GroupSpec, u, seed: int) -> ExtensionDescription:
    """A random point of the parameter space: each x_i a combination of its admissible monomials.

    The top coefficient is forced nonzero at level 1 and wherever u_i > p u_(i-1).
    """
    u = _require_valid(group, u)
    field = required_field(group)
    rng = np.random.default_rng(seed)
    w = [int(x * group.m) for x in u]
    coords = []
    for i, wi in enumerate(w):
        exps = admissible_exponents(wi, w[0], group.m, group.p)
        idx = rng.integers(0, field.q, size=len(exps))
        forced = i == 0 or u[i] > group.p * u[i - 1]
        if forced and idx[-1] == 0:
            # exps[-1] == wi here, since wi itself is admissible on this branch
            idx[-1] = rng.integers(1, field.q)
        coords.append(LaurentPoly.from_terms(field, {e: field.from_index(int(k)) for e, k in zip(exps, idx)}))
    witt = WittVector(field, tuple(coords))
    profile = upper_jumps_from_witt(witt, group.m)
    ext = ExtensionDescription(group, field, witt, tame_beta(group, w[0]), profile)
    if profile.u != tuple(u):
        raise AssertionError(f"sample has jumps {profile}, expected {u}")
    return ext
