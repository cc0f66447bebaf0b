"""Jump calculus for Z/p^n x| Z/m extensions.

Upper jumps u_i of the whole extension are stored scaled, as the integers
w_i = m u_i (the upper jumps of the cyclic part).  Lower jumps j_i are related
by w_i - w_{i-1} = (j_i - j_{i-1}) / p^(i-1) with j_0 = w_0 = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .groups import GroupSpec
from .witt.standard import NotStandardError
from .witt.vectors import WittVector


class ProfileError(ValueError):
    """A jump sequence that is not Herbrand-consistent or not integral."""


@dataclass(frozen=True)
class RamificationProfile:
    p: int
    m: int
    w: tuple[int, ...]
    j: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "w", tuple(int(x) for x in self.w))
        object.__setattr__(self, "j", tuple(int(x) for x in self.j))
        if len(self.w) != len(self.j) or not self.w:
            raise ProfileError("need the same positive number of upper and lower jumps")
        if lower_to_scaled_upper(self.j, self.p) != list(self.w):
            raise ProfileError(f"w={self.w} and j={self.j} are not related by the Herbrand function")

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def u(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.m) for x in self.w)

    def truncate(self, k: int) -> RamificationProfile:
        return RamificationProfile(self.p, self.m, self.w[:k], self.j[:k])

    def to_json(self) -> dict:
        return {"p": self.p, "m": self.m, "w": list(self.w), "j": list(self.j)}

    @classmethod
    def from_json(cls, data: dict) -> RamificationProfile:
        return cls(int(data["p"]), int(data["m"]), tuple(data["w"]), tuple(data["j"]))

    def __str__(self) -> str:
        u = ",".join(str(x) for x in self.u)
        return f"u=({u}) w=({','.join(map(str, self.w))}) j=({','.join(map(str, self.j))})"


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("jumps must be exact (int, Fraction or 'a/b' string), not float")
    return Fraction(value)


def scaled_upper_to_lower(w, p: int) -> list[int]:
    out, prev_w, prev_j = [], 0, 0
    for i, wi in enumerate(w, start=1):
        prev_j = prev_j + p ** (i - 1) * (wi - prev_w)
        prev_w = wi
        out.append(prev_j)
    return out


def lower_to_scaled_upper(j, p: int) -> list:
    """w from j; entries are Fractions when a step is not divisible by the needed power of p."""
    out, prev_w, prev_j = [], Fraction(0), 0
    for i, ji in enumerate(j, start=1):
        prev_w = prev_w + Fraction(ji - prev_j, p ** (i - 1))
        prev_j = ji
        out.append(int(prev_w) if prev_w.denominator == 1 else prev_w)
    return out


def _check_monotone_positive(seq, what: str) -> None:
    if not seq:
        raise ProfileError(f"empty {what} sequence")
    if seq[0] <= 0 or any(b < a for a, b in zip(seq, seq[1:])):
        raise ProfileError(f"{what} jumps must be positive and nondecreasing, got {list(seq)}")


def herbrand_upper_to_lower(u, p: int, m: int, scaled: bool = False) -> RamificationProfile:
    """Profile from upper jumps u_i (or from w_i = m u_i when ``scaled``)."""
    w_frac = [_as_fraction(x) * (1 if scaled else m) for x in u]
    _check_monotone_positive(w_frac, "upper")
    if any(x.denominator != 1 for x in w_frac):
        raise ProfileError(f"m*u = {[str(x) for x in w_frac]} is not integral, so the lower jumps are not integers")
    w = [int(x) for x in w_frac]
    return RamificationProfile(p, m, tuple(w), tuple(scaled_upper_to_lower(w, p)))


def herbrand_lower_to_upper(j, p: int, m: int) -> RamificationProfile:
    j = [int(x) for x in j]
    _check_monotone_positive(j, "lower")
    w = lower_to_scaled_upper(j, p)
    if any(isinstance(x, Fraction) for x in w):
        raise ProfileError(f"lower jumps {j} give non-integral scaled upper jumps {[str(x) for x in w]}")
    return RamificationProfile(p, m, tuple(w), tuple(j))


# ---------------------------------------------------------------------------
# jumps of Witt vectors

def _neg_valuations(a: WittVector) -> list[float]:
    """-v_0(x_d) = deg x_d, -inf for zero coordinates."""
    return [c.degree for c in a.coords]


def _scaled_upper_direct(a: WittVector, i: int) -> float:
    """max_{d <= i} p^(i-d) (-v_0(x_d)), the conductor of the i-th truncation."""
    return max(a.p ** (i - d) * deg for d, deg in enumerate(_neg_valuations(a)[:i], start=1))


def upper_jumps_from_witt(a: WittVector, m: int = 1) -> RamificationProfile:
    """Jumps of the extension y^p - y = a (Witt sense) over L_0, with tame order m."""
    if not a.is_standard:
        raise NotStandardError("upper_jumps_from_witt expects a vector in standard form")
    if a.coords[0].is_zero():
        raise ProfileError("x_1 = 0: the first Artin-Schreier layer is trivial")
    degs = _neg_valuations(a)
    w = [degs[0]]
    for deg in degs[1:]:
        w.append(max(a.p * w[-1], deg))
    w = [int(x) for x in w]
    return RamificationProfile(a.p, m, tuple(w), tuple(scaled_upper_to_lower(w, a.p)))


def truncation_jump_check(a: WittVector, m: int = 1) -> bool:
    """Compare each lower jump with the last lower jump of the matching truncation.

    The truncation's jumps are computed independently of the running
    recursion used by upper_jumps_from_witt, directly from the conductor
    formula applied to the first i coordinates at every level.
    """
    full = upper_jumps_from_witt(a, m)
    for i in range(1, a.n + 1):
        w_trunc = [int(_scaled_upper_direct(a, k)) for k in range(1, i + 1)]
        if scaled_upper_to_lower(w_trunc, a.p)[-1] != full.j[i - 1]:
            return False
    return True


# ---------------------------------------------------------------------------
# validity

@dataclass(frozen=True)
class Violation:
    condition: str  # "a", "b", "c" or "d"
    index: int  # 1-based jump index the condition failed at
    message: str

    def __str__(self) -> str:
        return f"({self.condition}) at i={self.index}: {self.message}"

    def to_json(self) -> dict:
        return {"condition": self.condition, "index": self.index, "message": self.message}


def validate_profile(group: GroupSpec, u) -> list[Violation]:
    """All violated conditions among (a)-(d) for the upper jumps u; empty means valid.

    Conditions (b)-(d) are phrased in terms of m u_i and are only checked at
    indices where (a) already holds.
    """
    p, m = group.p, group.m
    u = [_as_fraction(x) for x in u]
    out: list[Violation] = []
    if len(u) != group.n:
        raise ProfileError(f"expected {group.n} upper jumps for this group, got {len(u)}")
    w: list[int | None] = []
    for i, ui in enumerate(u, start=1):
        wi = ui * m
        if wi.denominator != 1 or wi <= 0:
            out.append(Violation("a", i, f"u_{i} = {ui} is not in (1/{m})N"))
            w.append(None)
        else:
            w.append(int(wi))
    w1 = w[0]
    if w1 is not None:
        if math.gcd(m, w1) != group.m_prime:
            out.append(Violation("b", 1, f"gcd(m, m u_1) = gcd({m}, {w1}) = {math.gcd(m, w1)} != m' = {group.m_prime}"))
        if w1 % p == 0:
            out.append(Violation("c", 1, f"p = {p} divides m u_1 = {w1}"))
    for i in range(2, group.n + 1):
        ui, prev = u[i - 1], u[i - 2]
        if ui == p * prev:
            continue
        if ui < p * prev:
            out.append(Violation("c", i, f"u_{i} = {ui} < p u_{i - 1} = {p * prev}"))
        elif w[i - 1] is not None and w[i - 1] % p == 0:
            out.append(Violation("c", i, f"u_{i} > p u_{i - 1} but p = {p} divides m u_{i} = {w[i - 1]}"))
    if w1 is not None:
        for i in range(2, group.n + 1):
            wi = w[i - 1]
            if wi is not None and (wi - w1) % m:
                out.append(Violation("d", i, f"m u_{i} = {wi} is not congruent to m u_1 = {w1} mod {m}"))
    return out


def parse_rationals(text: str) -> list[Fraction]:
    """'1/2,5/2' -> [Fraction(1, 2), Fraction(5, 2)]."""
    try:
        return [Fraction(part.strip()) for part in text.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError):
        raise ProfileError(f"cannot parse {text!r} as a comma-separated list of rationals") from None


# ---------------------------------------------------------------------------
# filtration and different

@dataclass(frozen=True)
class FiltrationTable:
    ranges: tuple[tuple[int, int, int], ...]  # (first r, last r, |I_r|)
    different: int

    def recompute_different(self) -> int:
        return sum((b - a + 1) * (order - 1) for a, b, order in self.ranges)

    def to_json(self) -> dict:
        return {"ranges": [list(r) for r in self.ranges], "different": self.different}


def different_degree(group: GroupSpec, profile: RamificationProfile) -> int:
    """(m p^n - 1) + sum_i (j_i - j_{i-1}) (p^(n-i+1) - 1)."""
    p, n = group.p, group.n
    total, prev = group.order - 1, 0
    for i, ji in enumerate(profile.j, start=1):
        total += (ji - prev) * (p ** (n - i + 1) - 1)
        prev = ji
    return total


def different_degree_upper(group: GroupSpec, profile: RamificationProfile) -> int:
    """Same quantity from the upper jumps: sum_i (p^i - p^(i-1)) (w_i + 1) + p^n (m - 1).

    The cyclic part L/L_0 contributes sum_i (p^i - p^(i-1))(w_i + 1) by the
    conductor-discriminant formula; the tame layer L_0/K of degree m adds
    (m - 1) per point of L, that is p^n (m - 1).
    """
    p = group.p
    cyclic = sum((p ** i - p ** (i - 1)) * (wi + 1) for i, wi in enumerate(profile.w, start=1))
    return cyclic + p ** group.n * (group.m - 1)


def filtration_table(group: GroupSpec, profile: RamificationProfile) -> FiltrationTable:
    violations = validate_profile(group, profile.u)
    if violations:
        raise ProfileError("invalid profile: " + "; ".join(map(str, violations)))
    p, n = group.p, group.n
    ranges = [(0, 0, group.order)]
    prev = 0
    for i, ji in enumerate(profile.j, start=1):
        if ji > prev:
            ranges.append((prev + 1, ji, p ** (n - i + 1)))
        prev = ji
    table = FiltrationTable(tuple(ranges), different_degree(group, profile))
    if table.recompute_different() != table.different:
        raise AssertionError("different degree disagrees with the filtration ranges")
    return table
