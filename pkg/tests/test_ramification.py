from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from _util import brute_validate, random_valid_profile, sweep_groups
from wittram.algebra.fields import fq_construct
from wittram.builder import synthesize
from wittram.groups import group_spec
from wittram.ramification import (FiltrationTable, ProfileError, RamificationProfile, different_degree,
                                  different_degree_upper, filtration_table, herbrand_lower_to_upper,
                                  herbrand_upper_to_lower, parse_rationals, truncation_jump_check,
                                  upper_jumps_from_witt, validate_profile)
from wittram.witt.standard import NotStandardError
from wittram.witt.vectors import WittVector

F2, F3 = fq_construct(2, 1), fq_construct(3, 1)


def W(field, *coords):
    return WittVector.from_terms(field, coords)


def brute_lower_filtration(g, j):
    """|I_r| for r = 0..j_n + 1, listing the subgroup index directly from the lower jumps."""
    orders = []
    for r in range(j[-1] + 2):
        if r == 0:
            orders.append(g.order)
            continue
        passed = sum(1 for ji in j if r > ji)
        orders.append(g.p ** (g.n - passed))
    return orders


def test_jumps_examples():
    for j in (1, 3, 5):
        prof = upper_jumps_from_witt(W(F2, {j: 1}, {}, {}), 1)
        assert prof.u == (j, 2 * j, 4 * j)
    assert upper_jumps_from_witt(W(F2, {1: 1}), 1).w == (1,)
    prof = upper_jumps_from_witt(W(F3, {2: 1}, {7: 1}), 1)
    assert prof.w == (2, 7) and prof.j == (2, 17)


def test_jumps_reject_bad_input():
    with pytest.raises(NotStandardError):
        upper_jumps_from_witt(W(F2, {2: 1}), 1)
    with pytest.raises(ProfileError):
        upper_jumps_from_witt(W(F2, {}, {1: 1}), 1)


def test_herbrand_examples():
    assert herbrand_upper_to_lower([1, 2, 4], 2, 1).j == (1, 3, 11)
    assert herbrand_upper_to_lower([Fraction(5, 3)], 2, 3).j == (5,)
    assert herbrand_upper_to_lower(["1/2", "5/2"], 3, 2).j == (1, 13)
    assert herbrand_lower_to_upper([1, 13], 3, 2).u == (Fraction(1, 2), Fraction(5, 2))


def test_herbrand_errors():
    with pytest.raises(ProfileError):
        herbrand_upper_to_lower(["1/3"], 2, 2)
    with pytest.raises(ProfileError):
        herbrand_lower_to_upper([1, 2], 2, 1)  # 2 - 1 is not divisible by 2
    with pytest.raises(ProfileError):
        herbrand_upper_to_lower([3, 2], 2, 1)
    with pytest.raises(TypeError):
        herbrand_upper_to_lower([0.5], 2, 2)
    with pytest.raises(ProfileError):
        RamificationProfile(2, 1, (1, 2), (1, 4))


def test_herbrand_round_trip_randomized():
    rng = np.random.default_rng(5)
    for g in sweep_groups(max_n=4):
        u = random_valid_profile(rng, g)
        prof = herbrand_upper_to_lower(u, g.p, g.m)
        assert herbrand_lower_to_upper(prof.j, g.p, g.m) == prof
        assert herbrand_upper_to_lower(prof.w, g.p, g.m, scaled=True) == prof
        # the defining relation, term by term
        for i in range(1, g.n):
            assert (prof.u[i] - prof.u[i - 1]) * g.p ** i * g.m == prof.j[i] - prof.j[i - 1]


def test_validator_examples():
    g = group_spec(3, 2, 2, 8)
    assert validate_profile(g, ["1/2", "5/2"]) == []
    bad = validate_profile(g, ["1/2", "2"])
    assert [v.condition for v in bad] == ["d"]
    for p in (2, 3, 5):
        assert {v.condition for v in validate_profile(group_spec(p, 1, 1), [p])} == {"c"}
    assert validate_profile(group_spec(3, 2, 1), [1, 3]) == []


def test_validator_reports_every_violation():
    g = group_spec(3, 3, 2, 26)
    found = validate_profile(g, ["3/2", "1/3", "2"])
    labels = {(v.condition, v.index) for v in found}
    assert ("c", 1) in labels  # 3 | m u_1
    assert ("a", 2) in labels
    assert ("d", 3) in labels
    with pytest.raises(ProfileError):
        validate_profile(g, [1])


def test_validator_matches_oracle_on_random_sequences():
    rng = np.random.default_rng(9)
    for g in sweep_groups(max_n=3, max_m=8):
        for _ in range(5):
            u = [Fraction(int(rng.integers(-1, 40)), int(rng.integers(1, 2 * g.m + 1))) for _ in range(g.n)]
            assert {v.condition for v in validate_profile(g, u)} == brute_validate(g, u)


def test_valid_profiles_satisfy_the_congruence_consequences():
    rng = np.random.default_rng(10)
    for g in sweep_groups(max_n=4):
        u = random_valid_profile(rng, g)
        assert validate_profile(g, u) == []
        prof = herbrand_upper_to_lower(u, g.p, g.m)
        assert all((j - prof.j[0]) % g.m == 0 for j in prof.j)
        assert all(j % g.p for j in prof.j)
        assert math.gcd(g.m, prof.j[0]) == g.m_prime
        assert (prof.j[0] * (g.p - 1)) % g.m == 0


def test_different_examples():
    g = group_spec(2, 1, 1)
    assert filtration_table(g, herbrand_lower_to_upper([1], 2, 1)).different == 2
    g = group_spec(2, 3, 1)
    prof = herbrand_lower_to_upper([1, 3, 11], 2, 1)
    assert different_degree(g, prof) == different_degree_upper(g, prof) == 28
    g = group_spec(3, 1, 2, 2)
    prof = herbrand_upper_to_lower(["1/2"], 3, 2)
    assert prof.j == (1,)
    assert filtration_table(g, prof).different == 7 == different_degree_upper(g, prof)


def test_filtration_table_against_direct_listing():
    rng = np.random.default_rng(12)
    for g in sweep_groups(max_n=3, max_m=6):
        prof = herbrand_upper_to_lower(random_valid_profile(rng, g), g.p, g.m)
        table = filtration_table(g, prof)
        orders = brute_lower_filtration(g, prof.j)
        assert table.different == sum(o - 1 for o in orders)
        assert table.different == different_degree_upper(g, prof)
        for a, b, order in table.ranges:
            assert all(orders[r] == order for r in range(a, b + 1))
        assert FiltrationTable(table.ranges, table.different).recompute_different() == table.different


def test_filtration_table_requires_a_valid_profile():
    with pytest.raises(ProfileError):
        filtration_table(group_spec(2, 1, 1), herbrand_lower_to_upper([2], 2, 1))


def test_truncation_check():
    assert truncation_jump_check(W(F2, {1: 1}, {}, {}), 1)
    assert truncation_jump_check(W(F3, {2: 1}, {7: 1}), 1)
    rng = np.random.default_rng(2)
    for g in sweep_groups(max_n=3, max_m=6):
        ext = synthesize(g, random_valid_profile(rng, g))
        assert truncation_jump_check(ext.witt, g.m)


def test_jumps_of_equivariant_vectors_are_valid():
    # standard-form vectors with every exponent congruent to j mod m give valid profiles
    rng = np.random.default_rng(4)
    for g in sweep_groups(primes=(2, 3), max_n=3, max_m=6):
        F = fq_construct(g.p, 1)
        u1 = random_valid_profile(rng, g)[0]
        j = int(u1 * g.m)
        coords = []
        for i in range(g.n):
            exps = [e for e in range(1, j * g.p ** i + 2 * g.m) if (e - j) % g.m == 0 and e % g.p]
            pick = rng.choice(exps, size=min(3, len(exps)), replace=False)
            coords.append({int(e): 1 for e in pick} if i else {j: 1})
        witt = W(F, *coords)
        prof = upper_jumps_from_witt(witt, g.m)
        assert validate_profile(g, prof.u) == []


def test_parse_rationals():
    assert parse_rationals("1/2, 5/2") == [Fraction(1, 2), Fraction(5, 2)]
    with pytest.raises(ProfileError):
        parse_rationals("1/0")
    with pytest.raises(ProfileError):
        parse_rationals("a,b")
