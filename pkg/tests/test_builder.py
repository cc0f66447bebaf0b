from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np
import pytest

from _util import random_valid_profile, sweep_groups
from wittram.algebra.fields import fq_construct, fq_root_of_unity
from wittram.builder import (ExtensionDescription, InvalidProfileError, admissible_exponents, check_equivariance,
                             delta_p, dominate, epsilon_brute, epsilon_count, field_for_roots_of_unity,
                             moduli_dimension, required_field, sample_extension, synthesize, tame_beta, tame_field)
from wittram.groups import group_spec
from wittram.ramification import upper_jumps_from_witt, validate_profile
from wittram.witt.standard import canonicalize_witt
from wittram.witt.vectors import WittVector

F2, F3 = fq_construct(2, 1), fq_construct(3, 1)


def W(field, *coords):
    return WittVector.from_terms(field, coords)


def test_dominate_examples():
    base = synthesize(group_spec(2, 1, 1), [1])
    assert base.witt == W(F2, {1: 1})
    assert dominate(base, 5).witt == W(F2, {1: 1}, {5: 1})
    assert dominate(base, 2).witt == W(F2, {1: 1}, {})
    g = group_spec(3, 1, 2, 2)
    base = synthesize(g, ["1/2"])
    ext = dominate(base, Fraction(5, 2))
    assert ext.witt == W(F3, {1: 1}, {5: 1})
    assert ext.group == group_spec(3, 2, 2, 8)
    assert check_equivariance(ext)
    assert ext.profile.truncate(1) == base.profile


def test_dominate_rejects_invalid_levels():
    base = synthesize(group_spec(2, 1, 1), [1])
    for bad, label in ((Fraction(1), "c"), (Fraction(4), "c"), (Fraction(5, 2), "a")):
        with pytest.raises(InvalidProfileError) as err:
            dominate(base, bad)
        assert label in {v.condition for v in err.value.violations}
    base = synthesize(group_spec(3, 1, 2, 2), ["1/2"])
    with pytest.raises(InvalidProfileError) as err:
        dominate(base, 2)
    assert {v.condition for v in err.value.violations} == {"d"}


def test_synthesize_examples():
    ext = synthesize(group_spec(5, 1, 1), [1])
    assert ext.witt == W(fq_construct(5, 1), {1: 1}) and ext.beta == 1
    assert synthesize(group_spec(2, 3, 1), [1, 2, 4]).witt == W(F2, {1: 1}, {}, {})
    ext = synthesize(group_spec(3, 2, 2, 8), ["1/2", "5/2"])
    assert ext.witt == W(F3, {1: 1}, {5: 1})
    assert ext.field == F3
    zeta = fq_root_of_unity(tame_field(ext.group), 2)
    assert zeta == F3.element(2)
    assert zeta ** (ext.beta * 1) == F3.element(pow(2, -1, 3))


def test_synthesize_refuses_invalid_profiles():
    with pytest.raises(InvalidProfileError) as err:
        synthesize(group_spec(3, 2, 2, 8), ["1/2", "2"])
    assert [v.condition for v in err.value.violations] == ["d"]


def test_check_equivariance():
    g = group_spec(3, 2, 2, 8)
    witt = W(F3, {1: 1}, {4: 1})
    ext = ExtensionDescription(g, F3, witt, 1, upper_jumps_from_witt(witt, 2))
    assert not check_equivariance(ext)
    g1 = group_spec(3, 2, 1)
    witt = W(F3, {1: 1, 2: 2}, {4: 1, 7: 1})
    assert check_equivariance(ExtensionDescription(g1, F3, witt, 1, upper_jumps_from_witt(witt, 1)))


def test_required_field_examples():
    assert required_field(group_spec(3, 2, 4, 1)).f == 1
    assert field_for_roots_of_unity(2, 3) == fq_construct(2, 2)
    assert required_field(group_spec(3, 2, 2, 8)) == F3
    assert required_field(group_spec(7, 1, 3, 2)) == fq_construct(7, 1)
    assert required_field(group_spec(5, 1, 4, 2)) == fq_construct(5, 1)


def test_tame_beta_solves_the_root_equation():
    rng = np.random.default_rng(1)
    for g in sweep_groups(max_n=1):
        u = random_valid_profile(rng, g)
        j = int(u[0] * g.m)
        beta = tame_beta(g, j)
        fld = tame_field(g)
        zeta = fq_root_of_unity(fld, g.m)
        assert math.gcd(beta, g.m) == 1
        assert zeta ** (beta * j) == fld.element(pow(g.alpha, -1, g.p))
        smaller = [b for b in range(1, beta) if math.gcd(b, g.m) == 1 and zeta ** (b * j) == zeta ** (beta * j)]
        assert smaller == []


def test_epsilon_examples():
    assert epsilon_count(5, 1, 2) == 3
    assert epsilon_count(4, 3, 2) == 1 and delta_p(4, 3, 2) == 1
    for p in (2, 3, 5, 7):
        assert epsilon_count(1, 1, p) == 1
    with pytest.raises(ValueError):
        epsilon_count(5, 4, 2)


def test_epsilon_closed_form_exhaustive():
    for p in (2, 3, 5, 7):
        for m in range(1, 31):
            if m % p == 0:
                continue
            for w in range(1, 501):
                assert epsilon_count(w, m, p) == epsilon_brute(w, m, p)


def test_moduli_dimension_examples():
    rep = moduli_dimension(group_spec(2, 1, 1), [3])
    assert rep.epsilons == (2,) and rep.n_eta == 2 and rep.covering_degree == 1
    rep = moduli_dimension(group_spec(2, 3, 1), [1, 2, 4])
    assert rep.epsilons == (1, 1, 2) and rep.n_eta == 4
    rep = moduli_dimension(group_spec(5, 1, 8, 1), [1])
    assert rep.covering_degree == 4 and rep.quotient_order == 1
    with pytest.raises(InvalidProfileError):
        moduli_dimension(group_spec(2, 1, 1), [2])


def test_dimension_counts_are_consistent_with_the_profile():
    rng = np.random.default_rng(3)
    for g in sweep_groups():
        u = random_valid_profile(rng, g)
        rep = moduli_dimension(g, u)
        assert rep.n_eta >= 1
        for i, eps in enumerate(rep.epsilons):
            if i == 0 or u[i] > g.p * u[i - 1]:
                assert eps >= 1


def test_sample_examples():
    g = group_spec(2, 1, 1)
    seen_lower = set()
    for seed in range(40):
        ext = sample_extension(g, [3], seed)
        x1 = ext.witt.coords[0]
        assert set(x1.exps.tolist()) <= {1, 3} and 3 in x1.exps.tolist()
        seen_lower.add(1 in x1.exps.tolist())
    assert seen_lower == {True, False}
    # level 1 has a single admissible monomial, so x_1 matches synthesize up to a nonzero scalar
    g = group_spec(3, 2, 2, 8)
    base = synthesize(g, ["1/2", "5/2"]).witt
    for seed in range(10):
        ext = sample_extension(g, ["1/2", "5/2"], seed)
        assert moduli_dimension(g, ["1/2", "5/2"]).epsilons == (1, 2)
        assert ext.witt.coords[0].exps.tolist() == base.coords[0].exps.tolist()
        assert ext.witt.coords[1].degree == 5
    # with every epsilon equal to 1 over F_2 the leading coefficient is forced to 1
    g = group_spec(2, 2, 1)
    assert moduli_dimension(g, [1, 2]).epsilons == (1, 1)
    for seed in range(10):
        assert sample_extension(g, [1, 2], seed).witt.coords[0] == synthesize(g, [1, 2]).witt.coords[0]


def test_sample_uses_only_admissible_monomials():
    rng = np.random.default_rng(6)
    for g in sweep_groups(max_n=3, max_m=8)[::3]:
        u = random_valid_profile(rng, g)
        w = [int(x * g.m) for x in u]
        for seed in range(5):
            ext = sample_extension(g, u, seed)
            for i, c in enumerate(ext.witt.coords):
                assert set(c.exps.tolist()) <= set(admissible_exponents(w[i], w[0], g.m, g.p))
            assert ext.profile.u == tuple(u)
            assert check_equivariance(ext)
            assert validate_profile(g, ext.profile.u) == []
            canon = canonicalize_witt(ext.witt, g)
            assert upper_jumps_from_witt(canon, g.m) == ext.profile


def test_sample_is_deterministic():
    g = group_spec(3, 2, 2, 8)
    a = sample_extension(g, ["1/2", "5/2"], 42).to_json()
    b = sample_extension(g, ["1/2", "5/2"], 42).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_extension_json_round_trip():
    ext = synthesize(group_spec(5, 2, 4, 7), ["1/4", "9/4"])
    data = json.loads(json.dumps(ext.to_json()))
    assert data["tame"] == {"j_mod_m": 1, "beta": ext.beta}
    assert ExtensionDescription.from_json(data) == ext
