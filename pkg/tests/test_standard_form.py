from __future__ import annotations

import numpy as np
import pytest

from _util import random_witt
from wittram.algebra.fields import fq_construct, fq_root_of_unity
from wittram.builder import synthesize
from wittram.groups import group_spec
from wittram.witt.standard import NotStandardError, PrecisionError, canonicalize_witt, orbit, standard_form
from wittram.witt.vectors import WittVector, witt_add, witt_wp

F2, F3, F4 = fq_construct(2, 1), fq_construct(3, 1), fq_construct(2, 2)


def W(field, *coords):
    return WittVector.from_terms(field, coords)


def assert_witness(a, a_std, w, field, precision=50):
    assert a_std.is_standard
    assert a_std.field == w.field == field
    assert witt_add(a.over(field), witt_wp(w)).truncate_below(-precision) == a_std


def test_square_reduces_to_its_root():
    a = W(F2, {2: 1})
    a_std, w, K = standard_form(a)
    assert a_std == W(F2, {1: 1})
    assert w == W(F2, {1: 1})
    assert K == F2
    assert_witness(a, a_std, w, K)


def test_standard_input_is_a_fixed_point():
    a = W(F3, {1: 1, 5: 2}, {7: 1})
    a_std, w, K = standard_form(a)
    assert a_std == a and w.is_zero() and K == F3


def test_length_two_square():
    # (x^2, 0) = Fr((x, 0)), so it differs from (x, 0) by wp((x, 0)) and the carry vanishes
    a = W(F2, {2: 1}, {})
    a_std, w, K = standard_form(a)
    assert a_std == W(F2, {1: 1}, {})
    assert_witness(a, a_std, w, K)


def test_length_two_carry_survives():
    a = W(F2, {2: 1, 1: 1}, {})
    a_std, w, K = standard_form(a)
    assert_witness(a, a_std, w, K)
    assert a_std.coords[0].is_zero()
    assert not a_std.coords[1].is_zero()


def test_constant_without_root_extends_the_field():
    # z^2 - z = 1 has no solution in F_2 but one in F_4
    a = W(F2, {0: 1, 3: 1})
    a_std, w, K = standard_form(a)
    assert K.q == 4
    assert_witness(a, a_std, w, K)
    assert a_std.coords[0].degree == 3


def test_constant_vector_of_length_two_needs_degree_four():
    # (1, 0) generates the cyclic extension of degree 4 of F_2, so the witness lives in F_16
    a = W(F2, {0: 1, 3: 1}, {})
    a_std, w, K = standard_form(a)
    assert K.q == 16
    assert_witness(a, a_std, w, K)


def test_negative_exponents_are_absorbed_to_the_requested_precision():
    a = W(F3, {-1: 1, 1: 1}, {-2: 2})
    for precision in (5, 20, 50):
        a_std, w, K = standard_form(a, precision)
        assert_witness(a, a_std, w, K, precision)
        assert a_std.coords[0] == W(F3, {1: 1}).coords[0]


def test_precision_must_be_positive():
    with pytest.raises(PrecisionError):
        standard_form(W(F2, {2: 1}), precision=0)


@pytest.mark.parametrize("p,f,n", [(2, 1, 2), (2, 1, 3), (2, 2, 2), (3, 1, 2), (3, 1, 3), (5, 1, 2)])
def test_random_inputs(p, f, n):
    fld = fq_construct(p, f)
    rng = np.random.default_rng(p + 10 * n)
    for _ in range(6):
        a = random_witt(rng, fld, n, -3, 2 * p + 1, 3)
        a_std, w, K = standard_form(a)
        assert_witness(a, a_std, w, K)
        again, w2, K2 = standard_form(a_std)
        assert again == a_std and w2.is_zero() and K2 == K


def test_canonicalize_trivial_orbit():
    a = W(F3, {1: 1}, {5: 2})
    assert canonicalize_witt(a, orbit_order=1) == a
    assert canonicalize_witt(a, group=group_spec(3, 2, 2, 1)) == a


def test_canonicalize_order_three_orbit_over_f4():
    a = W(F4, {1: 1})
    z = fq_root_of_unity(F4, 3)
    members = orbit(a, 3)
    assert {m.coords[0].leading_coefficient() for m in members} == {F4.one, z, z * z}
    canon = canonicalize_witt(a, orbit_order=3)
    assert canon in members
    assert all(canonicalize_witt(m, orbit_order=3) == canon for m in members)
    assert canonicalize_witt(canon, orbit_order=3) == canon


def test_canonicalize_for_a_nonabelian_group():
    g = group_spec(3, 2, 2, 8)
    ext = synthesize(g, ["1/2", "5/2"])
    neg = WittVector(ext.witt.field, tuple(-c for c in ext.witt.coords))
    assert canonicalize_witt(ext.witt, g) == canonicalize_witt(neg, g)
    assert canonicalize_witt(ext.witt, g) in (ext.witt, neg)


def test_canonicalize_rejects_nonstandard_input():
    with pytest.raises(NotStandardError):
        canonicalize_witt(W(F2, {2: 1}), orbit_order=1)
