"""Command line front end: ``wittram <group> <command> [options]``.

Exit status is 0 on success, 2 when a profile fails validation (the
violated conditions go to stderr) and 1 for usage or data errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import _config
from .algebra.fields import FieldError, fq_construct
from .algebra.laurent import LaurentPoly
from .builder import (ExtensionDescription, InvalidProfileError, dominate, moduli_dimension, sample_extension,
                      synthesize)
from .emitter import EmitterBoundError, emit_equations, emit_galois_action
from .groups import GroupError, GroupSpec
from .ramification import (ProfileError, different_degree, different_degree_upper, filtration_table,
                           herbrand_lower_to_upper, herbrand_upper_to_lower, parse_rationals,
                           upper_jumps_from_witt, validate_profile)
from .witt.standard import NotStandardError, PrecisionError, standard_form
from .witt.sums import TruncationBoundError
from .witt.vectors import WittShapeError, WittVector, witt_add, witt_int_scale, witt_wp

EXIT_OK, EXIT_ERROR, EXIT_INVALID = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# input parsing

_TERM = re.compile(r"^(?P<coef>\d+)?\*?(?P<x>x(\^\(?(?P<exp>~?\d+)\)?)?)?$")


def parse_laurent(text: str, field) -> LaurentPoly:
    """Parse text such as '2x^4 + x - 1 + x^-3' over a prime field."""
    s = text.replace(" ", "").replace("−", "-")
    if s in ("", "0"):
        return LaurentPoly.zero(field)
    # protect minus signs inside exponents before splitting on +/-
    s = re.sub(r"\^(\(?)-", r"^\1~", s)
    terms: dict[int, int] = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM.match(body)
        if not m or (m.group("coef") is None and m.group("x") is None):
            raise UsageError(f"cannot parse term {body!r} in {text!r}")
        coef = int(m.group("coef") or 1) * (-1 if sign == "-" else 1)
        exp = 0 if m.group("x") is None else int((m.group("exp") or "1").replace("~", "-"))
        terms[exp] = terms.get(exp, 0) + coef
    return LaurentPoly.from_terms(field, terms)


def _load_json(text: str):
    path = Path(text)
    if text == "-":
        return json.load(sys.stdin)
    if not text.lstrip().startswith(("{", "[")) and path.exists():
        return json.loads(path.read_text())
    return json.loads(text)


def load_witt(text: str, p: int | None) -> WittVector:
    """A WittVector from JSON (inline, a file, or '-') or from 'coord; coord; ...' text over F_p."""
    stripped = text.strip()
    if stripped.startswith("{") or stripped == "-" or (";" not in stripped and Path(stripped).exists()):
        data = _load_json(stripped)
        return WittVector.from_json(data["witt"] if "witt" in data else data)
    if p is None:
        raise UsageError("coordinate text needs -p")
    field = fq_construct(p, 1)
    return WittVector(field, tuple(parse_laurent(c, field) for c in stripped.split(";")))


def _upper(args) -> list[Fraction]:
    if args.upper is None:
        raise UsageError("--upper is required")
    return parse_rationals(args.upper)


def _lower(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--lower expects comma-separated integers, got {text!r}") from None


def _prime(args) -> int:
    if args.p is None:
        raise UsageError("-p is required")
    try:
        return int(args.p)
    except ValueError:
        raise UsageError(f"-p must be an integer here, got {args.p!r}") from None


def _group(args, n_default: int | None = None) -> GroupSpec:
    p = _prime(args)
    n = args.n if args.n is not None else n_default
    if n is None:
        raise UsageError("-n is required")
    m = args.m if args.m is not None else 1
    alpha = args.alpha_prime if args.alpha_prime is not None else 1
    return GroupSpec(p, n, m, alpha)


# ---------------------------------------------------------------------------
# output

def _emit(args, payload, text: str | None = None) -> None:
    if args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=False)
    else:
        out = text if text is not None else json.dumps(payload, indent=2)
    if args.output:
        Path(args.output).write_text(out + "\n")
    else:
        print(out)


def _witt_text(w: WittVector) -> str:
    return str(w)


# ---------------------------------------------------------------------------
# commands

def cmd_witt(args) -> int:
    p = int(args.p) if args.p is not None else None
    vecs = [load_witt(t, p) for t in args.vectors]
    if args.action == "sum":
        if len(vecs) < 2:
            raise UsageError("witt sum needs at least two vectors")
        result = vecs[0]
        for v in vecs[1:]:
            result = witt_add(result, v)
        _emit(args, result.to_json(), _witt_text(result))
    elif args.action == "scale":
        if args.factor is None or len(vecs) != 1:
            raise UsageError("witt scale needs --factor and one vector")
        result = witt_int_scale(args.factor, vecs[0])
        _emit(args, result.to_json(), _witt_text(result))
    elif args.action == "wp":
        if len(vecs) != 1:
            raise UsageError("witt wp takes one vector")
        result = witt_wp(vecs[0])
        _emit(args, result.to_json(), _witt_text(result))
    else:
        if len(vecs) != 1:
            raise UsageError("witt standard-form takes one vector")
        std, witness, fld = standard_form(vecs[0], args.precision)
        payload = {"standard_form": std.to_json(), "witness": witness.to_json(), "witness_field": fld.to_json()}
        _emit(args, payload, f"standard form: {std}\nwitness: {witness}\nwitness field: {fld}")
    return EXIT_OK


def _print_violations(violations) -> None:
    for v in violations:
        print(str(v), file=sys.stderr)


def cmd_ram(args) -> int:
    if args.action == "jumps":
        if len(args.vectors) != 1:
            raise UsageError("ram jumps takes one Witt vector")
        p = int(args.p) if args.p is not None else None
        profile = upper_jumps_from_witt(load_witt(args.vectors[0], p), args.m or 1)
        _emit(args, profile.to_json(), f"upper {','.join(map(str, profile.u))}\nlower {','.join(map(str, profile.j))}")
        return EXIT_OK
    if args.action == "convert":
        p, m = _prime(args), args.m or 1
        if args.lower is not None:
            profile = herbrand_lower_to_upper(_lower(args.lower), p, m)
            _emit(args, profile.to_json(), ",".join(str(x) for x in profile.u))
        else:
            profile = herbrand_upper_to_lower(_upper(args), p, m)
            _emit(args, profile.to_json(), ",".join(str(x) for x in profile.j))
        return EXIT_OK
    if args.action == "validate":
        u = _upper(args)
        group = _group(args, len(u))
        violations = validate_profile(group, u)
        if violations:
            _print_violations(violations)
            if args.format == "json":
                _emit(args, {"valid": False, "violations": [v.to_json() for v in violations]})
            return EXIT_INVALID
        _emit(args, {"valid": True, "violations": []}, "valid")
        return EXIT_OK
    # different
    if args.lower is not None:
        j = _lower(args.lower)
        profile = herbrand_lower_to_upper(j, _prime(args), args.m or 1)
    else:
        profile = herbrand_upper_to_lower(_upper(args), _prime(args), args.m or 1)
    group = _group(args, profile.n)
    violations = validate_profile(group, profile.u)
    if violations:
        _print_violations(violations)
        return EXIT_INVALID
    table = filtration_table(group, profile)
    delta_upper = different_degree_upper(group, profile)
    payload = {"different": table.different, "different_upper": delta_upper, "filtration": table.to_json()}
    _emit(args, payload, str(different_degree(group, profile)))
    return EXIT_OK


def cmd_moduli(args) -> int:
    u = _upper(args)
    report = moduli_dimension(_group(args, len(u)), u)
    text = (f"epsilon {','.join(map(str, report.epsilons))}\nN_eta {report.n_eta}\n"
            f"covering degree {report.covering_degree}")
    _emit(args, report.to_json(), text)
    return EXIT_OK


def cmd_build(args) -> int:
    if args.action == "dominate":
        if args.input is None:
            raise UsageError("build dominate needs --input with an extension description")
        ext = ExtensionDescription.from_json(_load_json(args.input))
        u = _upper(args)
        for u_n in u:
            ext = dominate(ext, u_n)
    else:
        u = _upper(args)
        group = _group(args, len(u))
        if args.action == "synth":
            ext = synthesize(group, u)
        else:
            ext = sample_extension(group, u, args.seed if args.seed is not None else 0)
    _emit(args, ext.to_json(), json.dumps(ext.to_json(), indent=2))
    return EXIT_OK


def cmd_emit(args) -> int:
    if args.p is None or args.n is None:
        raise UsageError("emit needs -p (a prime or the letter p) and -n")
    p = "p" if args.p == "p" else _prime(args)
    fmt = args.format or "text"
    if args.action == "action":
        doc = emit_galois_action(p, args.n, fmt)
    else:
        ext = None
        if args.input is not None:
            ext = ExtensionDescription.from_json(_load_json(args.input))
        elif args.upper is not None:
            if p == "p":
                raise UsageError("a concrete extension needs a numeric -p")
            m = args.m or 1
            alpha = args.alpha_prime if args.alpha_prime is not None else 1
            ext = synthesize(GroupSpec(p, args.n, m, alpha), _upper(args))
        doc = emit_equations(p, args.n, ext, fmt)
    out = doc.render()
    if args.output:
        Path(args.output).write_text(out + "\n")
    else:
        print(out)
    return EXIT_OK


# ---------------------------------------------------------------------------

def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-p", help="prime (emit also accepts the letter p)")
    parser.add_argument("-n", type=int, help="Witt length / number of wild jumps")
    parser.add_argument("-m", type=int, help="tame order (default 1)")
    parser.add_argument("--alpha-prime", type=int, help="conjugation exponent alpha' (default 1)")
    parser.add_argument("--upper", help="upper jumps u_i, e.g. 1/2,5/2")
    parser.add_argument("--lower", help="lower jumps j_i, e.g. 1,3,11")
    parser.add_argument("--seed", type=int, help="seed for build sample")
    parser.add_argument("--format", choices=("text", "json", "latex"), default="text")
    parser.add_argument("--precision", type=int, default=_config.DEFAULT_PRECISION,
                        help="tail precision for standard-form reduction")
    parser.add_argument("--input", help="extension description JSON (inline, file, or -)")
    parser.add_argument("-o", "--output", help="write the result to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wittram", description="Witt vectors and ramification of Z/p^n x| Z/m extensions")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    witt = groups.add_parser("witt", help="Witt vector arithmetic")
    witt.add_argument("action", choices=("sum", "scale", "wp", "standard-form"))
    witt.add_argument("vectors", nargs="*", help="Witt vectors: JSON, a JSON file, or 'c1; c2; ...' over F_p")
    witt.add_argument("--factor", type=int, help="integer for witt scale")
    _common(witt)

    ram = groups.add_parser("ram", help="ramification jumps")
    ram.add_argument("action", choices=("jumps", "convert", "validate", "different"))
    ram.add_argument("vectors", nargs="*", help="Witt vector for ram jumps")
    _common(ram)

    moduli = groups.add_parser("moduli", help="moduli dimension")
    moduli.add_argument("action", choices=("dim",))
    _common(moduli)

    build = groups.add_parser("build", help="construct extensions")
    build.add_argument("action", choices=("synth", "dominate", "sample"))
    _common(build)

    emit = groups.add_parser("emit", help="defining equations and Galois action")
    emit.add_argument("action", choices=("equations", "action"))
    _common(emit)
    return parser


_HANDLERS = {"witt": cmd_witt, "ram": cmd_ram, "moduli": cmd_moduli, "build": cmd_build, "emit": cmd_emit}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    # vectors may follow the options, which a '*' positional after the action does not pick up
    args, extra = parser.parse_known_args(argv)
    if extra:
        if args.group not in ("witt", "ram") or any(e.startswith("-") for e in extra):
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        args.vectors = list(args.vectors) + extra
    try:
        return _HANDLERS[args.group](args)
    except InvalidProfileError as exc:
        _print_violations(exc.violations)
        return EXIT_INVALID
    except (UsageError, ProfileError, GroupError, FieldError, WittShapeError, NotStandardError, PrecisionError,
            TruncationBoundError, EmitterBoundError, ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
        print(f"wittram: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
