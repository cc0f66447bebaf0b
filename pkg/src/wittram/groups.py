"""The semidirect product G = Z/p^n x| Z/m, reduced to exponent arithmetic.

sigma generates the cyclic p-part, c the tame part, and c sigma c^-1 = sigma^alpha'.
The character alpha = alpha' mod p has order m/m'.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from sympy import totient
from sympy.ntheory import isprime, n_order


class GroupError(ValueError):
    """Parameters do not define a semidirect product with an order-m generator."""


def teichmuller_lift(alpha: int, p: int, n: int) -> int:
    """The unique lift of alpha in F_p* to (Z/p^n)* of order prime to p."""
    if alpha % p == 0:
        raise GroupError(f"{alpha} is not a unit mod {p}")
    return pow(alpha, p ** (n - 1), p ** n)


@dataclass(frozen=True)
class GroupSpec:
    p: int
    n: int
    m: int
    alpha_prime: int
    alpha: int = field(init=False)
    m_prime: int = field(init=False)

    def __post_init__(self):
        p, n, m, a = self.p, self.n, self.m, self.alpha_prime
        if not isprime(p):
            raise GroupError(f"{p} is not prime")
        if n < 1:
            raise GroupError(f"n must be >= 1, got {n}")
        if m < 1 or m % p == 0:
            raise GroupError(f"tame order m={m} must be positive and prime to p={p}")
        if not 1 <= a < p ** n or a % p == 0:
            raise GroupError(f"alpha'={a} must satisfy 1 <= alpha' < p^n and p does not divide alpha'")
        if pow(a, m, p ** n) != 1:
            raise GroupError(f"alpha'^m = {pow(a, m, p ** n)} mod {p ** n}, not 1: c would not have order m")
        object.__setattr__(self, "alpha", a % p)
        # the kernel of reduction (Z/p^n)* -> F_p* is a p-group, so both orders agree
        object.__setattr__(self, "m_prime", m // n_order(a, p ** n))

    @property
    def order(self) -> int:
        return self.m * self.p ** self.n

    @property
    def quotient_order(self) -> int:
        """m / m', the order of alpha in F_p*."""
        return self.m // self.m_prime

    @property
    def is_abelian(self) -> bool:
        return self.alpha_prime == 1

    @property
    def tower(self) -> tuple[int, ...]:
        """Orders of H_0 = P, H_1, ..., H_n = 1."""
        return tuple(self.p ** (self.n - i) for i in range(self.n + 1))

    @property
    def covering_degree(self) -> int:
        """phi(m) / phi(m/m')."""
        return int(totient(self.m)) // int(totient(self.quotient_order))

    def to_json(self) -> dict:
        return {
            "p": self.p, "n": self.n, "m": self.m, "alpha_prime": self.alpha_prime,
            "alpha": self.alpha, "m_prime": self.m_prime, "tower": list(self.tower),
            "covering_degree": self.covering_degree,
        }

    @classmethod
    def from_json(cls, data: dict) -> GroupSpec:
        return cls(int(data["p"]), int(data["n"]), int(data["m"]), int(data["alpha_prime"]))


def group_spec(p: int, n: int, m: int, alpha_prime: int = 1) -> GroupSpec:
    return GroupSpec(p, n, m, alpha_prime)


def generator_change(spec: GroupSpec, beta: int) -> GroupSpec:
    """Replace c by c^beta, so alpha' becomes alpha'^beta mod p^n."""
    if math.gcd(beta, spec.m) != 1:
        raise GroupError(f"gcd({beta}, {spec.m}) != 1: c^beta does not generate the tame part")
    return GroupSpec(spec.p, spec.n, spec.m, pow(spec.alpha_prime, beta % spec.m, spec.p ** spec.n))


def valid_alpha_primes(p: int, n: int, m: int) -> list[int]:
    """All alpha' in [1, p^n) with (alpha')^m = 1 mod p^n, i.e. lifts of alpha in F_p* with alpha^m = 1."""
    if m % p == 0:
        return []
    lifts = {teichmuller_lift(a, p, n) for a in range(1, p) if pow(a, m, p) == 1}
    return sorted(x for x in lifts if pow(x, m, p ** n) == 1)


def all_groups(p: int, n: int, m: int) -> list[GroupSpec]:
    return [GroupSpec(p, n, m, a) for a in valid_alpha_primes(p, n, m)]
