"""Reduction of Witt vectors to standard form modulo the image of Fr - Id.

Coordinates are swept in increasing order.  Within slot i three kinds of
terms are removed, each by adding Fr(s) - s for a vector s supported in slot
i (so lower slots are untouched and higher slots pick up the carries):

* c x^(pe), e >= 1: s = -c^(1/p) x^e, which leaves the lower term c^(1/p) x^e;
* the constant c: s = z with z^p - z = -c, enlarging the field if needed;
* the negative part T: s = T + T^p + T^(p^2) + ..., since s^p - s = -T.

Terms below a floor exponent are dropped throughout.  Every monomial of a
slot-i sum polynomial is isobaric of weight p^(i-1) (X_d weighs p^(d-1)), so
with D the weighted degree of the input, dropped terms can only disturb
slot i at exponents below floor + D p^(i-1).  The floor is chosen so that
this stays under -precision, and the result is checked against the witness.
"""

from __future__ import annotations

import json

from .. import _config
from ..algebra.fields import artin_schreier_root, extension_field, fq_pth_root, fq_root_of_unity
from ..algebra.laurent import LaurentPoly
from .vectors import WittVector, truncation_floor, witt_add, witt_wp


class PrecisionError(ValueError):
    """The requested precision cannot support the reduction."""


class NotStandardError(ValueError):
    """An operation that needs standard form received something else."""


def _absorb(cur: WittVector, w: WittVector, slot: int, s: LaurentPoly, floor: int):
    piece = WittVector.single(cur.field, cur.n, slot, s)
    cur = witt_add(cur, witt_wp(piece, floor), floor)
    w = witt_add(w, piece, floor)
    return cur, w


def standard_form(a: WittVector, precision: int = _config.DEFAULT_PRECISION):
    """Return (a_std, witness, witness_field) with a_std = a +' (Fr - Id)(witness).

    The identity is exact at every exponent >= -precision; ``a_std`` and the
    witness live over ``witness_field``, which contains a.field and is larger
    only when some constant term has no Artin-Schreier root in a.field.
    """
    if precision < 1:
        raise PrecisionError(f"precision must be a positive integer, got {precision}")
    if a.is_standard:
        return a, WittVector.zero(a.field, a.n), a.field
    p, n = a.p, a.n
    floor = truncation_floor(precision, a)
    source = a
    cur = a.truncate_below(floor)
    w = WittVector.zero(a.field, n)

    for i in range(1, n + 1):
        # positive exponents divisible by p, all at once; repeat while new ones appear
        while True:
            c = cur.coords[i - 1]
            mask = (c.exps > 0) & (c.exps % p == 0)
            if not mask.any():
                break
            terms = {int(e) // p: -fq_pth_root(coef) for e, coef in c.select(mask).terms()}
            cur, w = _absorb(cur, w, i, LaurentPoly.from_terms(cur.field, terms), floor)

        const = cur.coords[i - 1].constant_term()
        if not const.is_zero():
            root = artin_schreier_root(-const)
            while root is None:
                big, embed = extension_field(cur.field, p)
                source, cur, w = source.map_field(embed), cur.map_field(embed), w.map_field(embed)
                root = artin_schreier_root(-embed(const))
            cur, w = _absorb(cur, w, i, LaurentPoly.constant(cur.field, root), floor)

        neg = cur.coords[i - 1].negative_part()
        if not neg.is_zero():
            series = LaurentPoly.zero(cur.field)
            term = neg
            while not term.is_zero():
                series = series + term
                term = term.frobenius().truncate_below(floor)
            cur, w = _absorb(cur, w, i, series, floor)

    a_std = cur
    if not a_std.is_standard:
        raise AssertionError(f"reduction left a non-standard vector {a_std}")
    check = witt_add(source, witt_wp(w, floor), floor).truncate_below(-precision)
    if check != a_std:
        raise AssertionError("witness identity failed; the truncation floor is too high")
    return a_std, w, cur.field


def orbit(a: WittVector, order: int) -> list[WittVector]:
    """The vectors lambda * a (coordinate-wise) for lambda in mu_order."""
    zeta = fq_root_of_unity(a.field, order)
    out = []
    lam = a.field.one
    for _ in range(order):
        out.append(WittVector(a.field, tuple(c.scale(lam) for c in a.coords)))
        lam = lam * zeta
    return out


def _serial(a: WittVector) -> str:
    return json.dumps([c.to_json() for c in a.coords], sort_keys=True, separators=(",", ":"))


def canonicalize_witt(a: WittVector, group=None, orbit_order: int | None = None) -> WittVector:
    """Least member (by serialized coordinates) of the mu_{m/m'}-orbit of a standard-form vector.

    For an equivariant vector every exponent is congruent to j mod m, so the
    substitution x -> zeta_m^k x multiplies all coordinates by the same
    (m/m')-th root of unity zeta_m^(kj).  The roots of unity involved lie in
    F_p, hence coordinate-wise scaling is also a Witt-vector operation.
    ``orbit_order`` overrides m/m' (useful for fields larger than the one the
    group requires).
    """
    if not a.is_standard:
        raise NotStandardError("canonicalize_witt expects a vector in standard form")
    if orbit_order is None:
        if group is None:
            raise ValueError("give a group or an explicit orbit_order")
        orbit_order = group.m // group.m_prime
    if orbit_order == 1:
        return a
    return min(orbit(a, orbit_order), key=_serial)
