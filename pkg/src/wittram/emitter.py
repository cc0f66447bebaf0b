"""Rendering of Artin-Schreier-Witt defining equations and the Galois action.

Two routes are used side by side.  The fraction style rebuilds the integral
recursion for the sum polynomials as an expression tree, so each equation
reads as nested quotients by powers of p; it works with a symbolic p.  The
reduced style expands the same polynomials over F_p (numeric p only) and, for
a concrete extension, substitutes the Witt coordinates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Union

from . import _config
from .algebra.laurent import LaurentPoly
from .builder import ExtensionDescription
from .witt.sums import sum_polynomials

P = Union[int, str]  # a prime, or the literal "p" for the symbolic display

_SUP = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_SUB = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
MINUS = "−"
MAPSTO = "↦"


class EmitterBoundError(ValueError):
    """The requested length exceeds the symbolic bound."""


# ---------------------------------------------------------------------------
# expression tree for the fraction style

@dataclass(frozen=True)
class Var:
    kind: str  # "x" or "y"
    index: int


@dataclass(frozen=True)
class Const:
    value: int  # 0 or 1


@dataclass(frozen=True)
class PowP:
    base: object
    k: int  # exponent p^k


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node), sign is +1 or -1


@dataclass(frozen=True)
class Frac:
    num: object
    k: int  # denominator p^k


ZERO, ONE = Const(0), Const(1)


def sum_template(d: int):
    """S_(d-1) as the recursion writes it: x_d + y_d + sum of quotients."""
    terms = [(1, Var("x", d)), (1, Var("y", d))] + [(1, q) for q in quotient_terms(d)]
    return Sum(tuple(terms))


def quotient_terms(i: int) -> list:
    """(x_e^(p^k) + y_e^(p^k) - S_(e-1)^(p^k)) / p^k with k = i - e, for e = 1..i-1."""
    out = []
    for e in range(1, i):
        k = i - e
        num = Sum(((1, PowP(Var("x", e), k)), (1, PowP(Var("y", e), k)), (-1, PowP(sum_template(e), k))))
        out.append(Frac(num, k))
    return out


def equation_template(i: int):
    """Right-hand side f_i: the quotients for slot i followed by x_i."""
    return Sum(tuple([(1, q) for q in quotient_terms(i)] + [(1, Var("x", i))]))


def substitute_generator(node):
    """x_1 -> 1, x_d -> 0 for d >= 2, then simplify.

    A sum never starts with a constant: a leading 1 moves behind the first
    non-constant term, so x_1 + y_1 becomes y_1 + 1.
    """
    if isinstance(node, Var):
        if node.kind == "x":
            return ONE if node.index == 1 else ZERO
        return node
    if isinstance(node, Const):
        return node
    if isinstance(node, PowP):
        base = substitute_generator(node.base)
        return base if isinstance(base, Const) else PowP(base, node.k)
    if isinstance(node, Frac):
        num = substitute_generator(node.num)
        return ZERO if num == ZERO else Frac(num, node.k)
    if isinstance(node, Sum):
        kept = [(s, substitute_generator(t)) for s, t in node.terms]
        kept = [(s, t) for s, t in kept if t != ZERO]
        lead = 0
        while lead < len(kept) and isinstance(kept[lead][1], Const):
            lead += 1
        if 0 < lead < len(kept):
            kept = [kept[lead]] + kept[:lead] + kept[lead + 1:]
        return Sum(tuple(kept)) if kept else ZERO
    raise TypeError(node)


class _Style:
    def __init__(self, p: P, fmt: str, names: dict):
        self.p, self.fmt, self.names = p, fmt, names

    def var(self, v: Var) -> str:
        return self.names[(v.kind, v.index)]

    def power_suffix(self, k: int) -> str:
        if self.p == "p":
            if self.fmt == "latex":
                return "^p" if k == 1 else f"^{{p^{k}}}"
            return "^p" if k == 1 else f"^(p^{k})"
        return superscript(self.p ** k, self.fmt)

    def denominator(self, k: int) -> str:
        if self.p == "p":
            return "p" if k == 1 else f"p^{k}"
        return str(self.p ** k)

    def render(self, node) -> str:
        if isinstance(node, Var):
            return self.var(node)
        if isinstance(node, Const):
            return str(node.value)
        if isinstance(node, PowP):
            base = self.render(node.base)
            if isinstance(node.base, Sum) and len(node.base.terms) > 1:
                base = f"({base})"
            return base + self.power_suffix(node.k)
        if isinstance(node, Frac):
            num, den = self.render(node.num), self.denominator(node.k)
            if self.fmt == "latex":
                return f"\\frac{{{num}}}{{{den}}}"
            return f"({num})/{den}"
        if isinstance(node, Sum):
            minus = "-" if self.fmt == "latex" else MINUS
            parts = []
            for idx, (sign, term) in enumerate(node.terms):
                body = self.render(term)
                if idx == 0:
                    parts.append(body if sign > 0 else f"{minus}{body}")
                else:
                    parts.append(f" + {body}" if sign > 0 else f" {minus} {body}")
            return "".join(parts)
        raise TypeError(node)


def superscript(e: int, fmt: str) -> str:
    if e == 1:
        return ""
    if fmt == "latex":
        s = str(e)
        return f"^{s}" if len(s) == 1 else f"^{{{s}}}"
    return str(e).translate(_SUP)


# ---------------------------------------------------------------------------
# naming

def _names(p: P, n: int, fmt: str, concrete: bool) -> dict:
    """Display names for x_i and y_i.

    y, z, w replace y_1, y_2, y_3 when a numeric p is paired with n = 3; a
    concrete extension has the single variable x of L_0.
    """
    names = {}
    for i in range(1, n + 1):
        if fmt == "latex":
            names[("x", i)], names[("y", i)] = f"x_{i}", f"y_{i}"
        else:
            names[("x", i)] = f"x{str(i).translate(_SUB)}"
            names[("y", i)] = f"y{str(i).translate(_SUB)}"
    if p != "p" and n == 3:
        names.update({("y", 1): "y", ("y", 2): "z", ("y", 3): "w"})
    if concrete:
        names["x"] = "x"
    return names


def _sigma_name(fmt: str) -> str:
    return "\\sigma" if fmt == "latex" else "σ"


# ---------------------------------------------------------------------------
# reduced polynomials

def _monomial(names: list[str], exps, fmt: str) -> str:
    parts = []
    for name, e in zip(names, exps):
        if e == 0:
            continue
        if fmt == "latex":
            parts.append(name + ("" if e == 1 else (f"^{e}" if 0 <= e < 10 else f"^{{{e}}}")))
        else:
            parts.append(name + superscript(e, fmt))
    return "".join(parts)


def _coeff_prefix(c, fmt: str) -> str:
    s = str(c)
    if s == "1":
        return ""
    if "+" in s:
        s = f"({s})"
    return s + ("" if fmt == "text" else " ")


def render_terms(terms: dict, names: list[str], fmt: str) -> str:
    """Sum of coefficient * monomial, by descending total degree then descending exponent tuple."""
    if not terms:
        return "0"
    order = sorted(terms, key=lambda ex: (sum(ex), ex), reverse=True)
    parts = []
    for ex in order:
        mono = _monomial(names, ex, fmt)
        coef = terms[ex]
        if not mono:
            parts.append(str(coef) if not ("+" in str(coef)) else f"({coef})")
        else:
            parts.append(_coeff_prefix(coef, fmt) + mono)
    return " + ".join(parts)


def generic_reduced_terms(p: int, n: int) -> list[dict]:
    """f_1..f_n over F_p as {exponent tuple over (x_1..x_n, y_1..y_n): coefficient}."""
    table = sum_polynomials(p, n)
    return [{tuple(int(e) for e in mon): int(c) for mon, c in zip(f.monoms(), f.coeffs())} for f in table.f]


def sigma_reduced_terms(p: int, n: int) -> list[dict]:
    """The increments f~_i = f_i(y_1..y_(i-1), 1, 0, ..., 0) over (y_1..y_n)."""
    out = []
    for terms in generic_reduced_terms(p, n):
        acc: dict = {}
        for ex, c in terms.items():
            if any(ex[d] for d in range(1, n)):
                continue
            key = ex[n:]
            acc[key] = (acc.get(key, 0) + c) % p
        out.append({k: v for k, v in acc.items() if v})
    return out


def concrete_terms(ext: ExtensionDescription) -> list[dict]:
    """f_i with x_d replaced by the Witt coordinates: {(x exponent, y exponents): coefficient}."""
    witt = ext.witt
    p, n = witt.p, witt.n
    fld = witt.field
    powers: dict = {}

    def power(d: int, k: int) -> LaurentPoly:
        if (d, k) not in powers:
            powers[(d, k)] = witt.coords[d] ** k
        return powers[(d, k)]

    out = []
    for terms in generic_reduced_terms(p, n):
        acc: dict = {}
        for ex, c in terms.items():
            poly = LaurentPoly.constant(fld, c)
            for d in range(n):
                if ex[d]:
                    poly = poly * power(d, ex[d])
            if poly.is_zero():
                continue
            key = ex[n:]
            acc[key] = acc[key] + poly if key in acc else poly
        flat = {}
        for yex, poly in acc.items():
            for e, coef in poly.terms():
                flat[(e,) + yex] = coef
        out.append(flat)
    return out


def tame_invariant(ext: ExtensionDescription) -> bool:
    """Check that x -> zeta^beta x, y_i -> zeta^(beta j) y_i scales each equation by zeta^(beta j).

    A term x^e y^B of total y-degree b is scaled by zeta^(beta (e + j b)); it
    must match zeta^(beta j).  As beta is prime to m this is the congruence
    e + j (b - 1) = 0 mod m, checked on every term of both sides.
    """
    m, j, p = ext.group.m, ext.profile.w[0], ext.group.p
    if (j * (p - 1)) % m:  # y_i^p against y_i on the left-hand side
        return False
    for terms in concrete_terms(ext):
        for ex in terms:
            e, b = ex[0], sum(ex[1:])
            if (e + j * (b - 1)) % m:
                return False
    return True


# ---------------------------------------------------------------------------
# documents

@dataclass
class EquationDocument:
    p: P
    n: int
    format: str
    equations: list[str] = field(default_factory=list)
    fraction_form: list[str] = field(default_factory=list)
    reduced_form: list[str] = field(default_factory=list)
    sigma_action: list[str] = field(default_factory=list)
    tame_action: list[str] = field(default_factory=list)
    terms: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "p": self.p, "n": self.n, "equations": self.equations,
            "fraction_form": self.fraction_form, "reduced_form": self.reduced_form,
            "sigma_action": self.sigma_action, "tame_action": self.tame_action, "terms": self.terms,
        }

    def render(self) -> str:
        if self.format == "json":
            return json.dumps(self.to_json(), indent=2)
        lines = list(self.equations) + list(self.sigma_action) + list(self.tame_action)
        return "\n".join(lines)


def _check_bounds(p: P, n: int) -> None:
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > _config.max_n():
        raise EmitterBoundError(f"n = {n} exceeds WITTRAM_MAX_N = {_config.max_n()}")
    if p != "p" and (not isinstance(p, int) or p < 2):
        raise ValueError(f"p must be a prime or the symbol 'p', got {p!r}")


def _lhs(style: _Style, i: int) -> str:
    y = style.names[("y", i)]
    minus = "-" if style.fmt == "latex" else MINUS
    power = "^p" if style.p == "p" else superscript(style.p, style.fmt)
    return f"{y}{power} {minus} {y}"


def _json_terms(terms: dict) -> list:
    out = []
    for ex, c in sorted(terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True):
        out.append({"exps": list(ex), "coeff": c.to_json() if hasattr(c, "to_json") else int(c)})
    return out


def emit_equations(p: P, n: int, ext: ExtensionDescription | None = None, fmt: str = "text") -> EquationDocument:
    """Defining equations y_i^p - y_i = f_i, generically or for a concrete extension."""
    _check_bounds(p, n)
    if ext is not None:
        if p == "p" or ext.witt.p != p or ext.witt.n != n:
            raise ValueError("the extension must have characteristic p and Witt length n")
    render_fmt = "latex" if fmt == "json" else fmt
    names = _names(p, n, render_fmt, ext is not None)
    style = _Style(p, render_fmt, names)
    doc = EquationDocument(p, n, fmt)
    for i in range(1, n + 1):
        doc.fraction_form.append(f"{_lhs(style, i)} = {style.render(equation_template(i))}")
    if p != "p":
        if ext is None:
            var_names = [names[("x", i)] for i in range(1, n + 1)] + [names[("y", i)] for i in range(1, n + 1)]
            reduced = generic_reduced_terms(p, n)
        else:
            var_names = ["x"] + [names[("y", i)] for i in range(1, n + 1)]
            reduced = concrete_terms(ext)
        for i, terms in enumerate(reduced, start=1):
            doc.reduced_form.append(f"{_lhs(style, i)} = {render_terms(terms, var_names, render_fmt)}")
            doc.terms.append(_json_terms(terms))
        doc.sigma_action = emit_galois_action(p, n, fmt).sigma_action
        if ext is not None:
            doc.tame_action = _tame_lines(ext, names, render_fmt)
    doc.equations = doc.fraction_form if p == "p" or (ext is None and fmt == "latex") else doc.reduced_form
    return doc


def _tame_lines(ext: ExtensionDescription, names: dict, fmt: str) -> list[str]:
    """c(x) = zeta^beta x and c(y_i) = zeta^(beta j) y_i = alpha^-1 y_i."""
    m, beta, j = ext.group.m, ext.beta, ext.profile.w[0]
    lam = pow(ext.group.alpha, -1, ext.group.p)
    zeta = "\\zeta" if fmt == "latex" else "ζ"
    sep = " " if fmt == "latex" else ""

    def scaled(k: int, var: str) -> str:
        k %= m
        if k == 0:
            return var
        power = "" if k == 1 else (f"^{{{k}}}" if fmt == "latex" else str(k).translate(_SUP))
        return f"{zeta}{power}{sep}{var}"

    lines = [f"c(x) = {scaled(beta, 'x')}"]
    for i in range(1, ext.witt.n + 1):
        y = names[("y", i)]
        line = f"c({y}) = {scaled(beta * j, y)}"
        if (beta * j) % m:
            line += f" = {lam}{sep}{y}"
        lines.append(line)
    return lines


def emit_galois_action(p: P, n: int, fmt: str = "text") -> EquationDocument:
    """sigma(y_i) = y_i + f~_i with f~_i = f_i(y_1, ..., y_(i-1), 1, 0, ..., 0)."""
    _check_bounds(p, n)
    render_fmt = "latex" if fmt == "json" else fmt
    names = _names(p, n, render_fmt, False)
    style = _Style(p, render_fmt, names)
    doc = EquationDocument(p, n, fmt)
    fraction = []
    for i in range(1, n + 1):
        y = names[("y", i)]
        inc = substitute_generator(equation_template(i))
        fraction.append(f"{_sigma_name(render_fmt)}({y}) = {y} + {style.render(inc)}")
    doc.fraction_form = fraction
    if p == "p":
        doc.sigma_action = fraction
        return doc
    var_names = [names[("y", i)] for i in range(1, n + 1)]
    arrow = "\\mapsto" if render_fmt == "latex" else MAPSTO
    reduced = []
    for i, terms in enumerate(sigma_reduced_terms(p, n), start=1):
        y = names[("y", i)]
        inc = render_terms(terms, var_names, render_fmt)
        reduced.append(f"{y} {arrow} {y}" if not terms else f"{y} {arrow} {y} + {inc}")
        doc.terms.append(_json_terms(terms))
    doc.reduced_form = reduced
    doc.sigma_action = fraction if fmt == "latex" else reduced
    return doc
