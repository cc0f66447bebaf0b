from __future__ import annotations

import math

import pytest
from sympy import totient

from wittram.groups import GroupError, GroupSpec, all_groups, generator_change, group_spec, valid_alpha_primes


def brute_order(a, mod):
    k, x = 1, a % mod
    while x != 1:
        x = x * a % mod
        k += 1
    return k


def test_dihedral_example():
    g = group_spec(3, 2, 2, 8)
    assert g.alpha == 2
    assert g.m_prime == 1
    assert g.quotient_order == 2
    assert g.order == 18
    assert g.tower == (9, 3, 1)
    assert not g.is_abelian


def test_abelian_has_full_m_prime():
    for p, n, m in ((2, 3, 5), (3, 2, 4), (5, 1, 12)):
        g = group_spec(p, n, m, 1)
        assert g.is_abelian and g.m_prime == m
        assert g.covering_degree == int(totient(m))


def test_invalid_alpha_prime():
    with pytest.raises(GroupError):
        group_spec(3, 2, 2, 2)  # 2^2 = 4 is not 1 mod 9
    with pytest.raises(GroupError):
        group_spec(3, 2, 2, 3)  # divisible by p
    with pytest.raises(GroupError):
        group_spec(3, 1, 3, 1)  # p divides m
    with pytest.raises(GroupError):
        group_spec(4, 1, 1, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_valid_alpha_primes_brute_force(p, n):
    for m in range(1, 13):
        if m % p == 0:
            assert valid_alpha_primes(p, n, m) == []
            continue
        brute = [a for a in range(1, p ** n) if a % p and pow(a, m, p ** n) == 1]
        assert valid_alpha_primes(p, n, m) == brute
        for g in all_groups(p, n, m):
            # m' from the order of alpha' mod p^n and from the order of alpha mod p agree
            assert g.m_prime == m // brute_order(g.alpha_prime, p ** n) == m // brute_order(g.alpha, p)
            assert (p - 1) % g.quotient_order == 0
            assert g.covering_degree == int(totient(m)) // int(totient(m // g.m_prime))


def test_generator_change_examples():
    g = group_spec(3, 2, 4, 8)
    assert generator_change(g, 1) == g
    assert generator_change(g, 3).alpha_prime == 8
    with pytest.raises(GroupError):
        generator_change(g, 2)


@pytest.mark.parametrize("p,n,m", [(3, 2, 4), (5, 2, 4), (7, 1, 6), (5, 1, 8), (3, 3, 2)])
def test_generator_change_invariants(p, n, m):
    for g in all_groups(p, n, m):
        for beta in range(1, m + 1):
            if math.gcd(beta, m) != 1:
                continue
            h = generator_change(g, beta)
            assert h.m_prime == g.m_prime
            assert h.quotient_order == g.quotient_order
            assert generator_change(h, pow(beta, -1, m)) == g


def test_conjugation_acts_by_alpha_on_every_level():
    # sigma_i = sigma^(p^(i-1)) generates H_(i-1)/H_i; c sigma_i c^-1 = sigma_i^alpha' and alpha' = alpha mod p
    for g in all_groups(7, 3, 6):
        for i in range(1, g.n + 1):
            gen = g.p ** (i - 1)
            image = gen * g.alpha_prime % g.p ** g.n
            # in H_(i-1)/H_i = Z/p (generated by p^(i-1)) the image is alpha times the generator
            assert (image // gen) % g.p == g.alpha


def test_json_round_trip():
    g = group_spec(5, 2, 4, 7)
    assert GroupSpec.from_json(g.to_json()) == g
