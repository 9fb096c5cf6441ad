"""Command line interface: ``gwcover {cover,gw,trace,milnor,ss}``."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from .errors import GWCoverError, ParseError
from .factor import DEFAULT_MAX_DEGREE, DEFAULT_SEED
from .fields import Extension, Field, Rationals
from .forms import trace_form
from .gw import GWElement, canonical_terms, display
from .parsing import parse_config, parse_field, parse_gw, parse_polynomial, parse_rational, tokenize
from .pipeline import BranchedCoverInput, chi_of_cover, move_point
from .scheja_storch import a1_milnor, build_quotient, local_factor_at_origin, ss_form


def gw_to_json(x: GWElement) -> dict:
    rest, h = canonical_terms(x)
    out = {
        "entries": [[c, m] for c, m in sorted(rest.items(), key=lambda cm: (abs(cm[0]), cm[0] < 0))],
        "hyperbolic": h,
        "rank": x.rank,
        "signature": x.signature() if isinstance(x.field, Rationals) else None,
        "discriminant": x.discriminant(),
        "display": display(x),
    }
    return out


def _invariant_line(x: GWElement) -> str:
    parts = [f"rank = {x.rank}"]
    if isinstance(x.field, Rationals):
        parts.append(f"signature = {x.signature()}")
    parts.append(f"discriminant = {x.discriminant()}")
    return ", ".join(parts)


# ------------------------------------------------------------------- commands

def _read_config(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    if "=" not in arg:
        raise ParseError(f"{arg!r} is neither a config file nor inline 'key = value' text", 1, 1)
    return arg


def cmd_cover(args) -> tuple[str, dict]:
    cfg = parse_config(_read_config(args.config))
    K = cfg.field
    if args.field is not None and parse_field(args.field) != K:
        raise ParseError(f"--field {args.field} conflicts with field = {K} in the config", 1, 1)
    F = cfg.F
    if args.move_point:
        coords = [K.convert(parse_rational(c)) for c in args.move_point.split(",")]
        F = move_point(F, coords)
    report = chi_of_cover(BranchedCoverInput(K, cfg.n, F), seed=args.seed,
                          max_degree=args.max_degree, etale_check=args.etale_check)
    lines = [f"field = {K}, n = {cfg.n}", f"F = {F}", f"critical points: {len(report.points)}"]
    pts_json = []
    for pt in report.points:
        cls = pt.local_class()
        lines.append(
            f"  [{pt.chart}] degree {pt.degree}, m = {pt.m}, alpha = {pt.alpha}, "
            f"min polys: {'; '.join(pt.min_polys)}, local class: {display(cls) if cls is not None else '-'}"
        )
        pts_json.append({
            "chart": pt.chart,
            "min_polys": pt.min_polys,
            "degree": pt.degree,
            "m": pt.m,
            "alpha_class": display(cls) if cls is not None else None,
        })
    lines.append(f"beta = {display(report.beta)}")
    lines.append(f"chi = {display(report.chi)}")
    lines.append(f"  {_invariant_line(report.chi)}")
    lines.append(f"chi(blow-up model) = {display(report.chi_blowup_model)}")
    lines.append("checks: " + ", ".join(f"{k} {'ok' if v else 'FAILED'}" for k, v in report.checks.items()))
    data = {
        "chi": gw_to_json(report.chi),
        "beta": gw_to_json(report.beta),
        "chi_blowup_model": gw_to_json(report.chi_blowup_model),
        "points": pts_json,
        "checks": report.checks,
    }
    return "\n".join(lines), data


def cmd_gw(args) -> tuple[str, dict]:
    K = parse_field(args.field or "Q")
    x = parse_gw(args.expr, K)
    return f"{display(x)}\n  {_invariant_line(x)}", {"result": gw_to_json(x)}


def _new_name(text: str, known: Sequence[str]) -> str:
    names = []
    for t in tokenize(text):
        if t.kind == "name" and t.text not in known and t.text not in names:
            names.append(t.text)
    if len(names) != 1:
        raise ParseError(f"each --ext polynomial must introduce exactly one new variable: {text!r}", 1, 1)
    return names[0]


def build_tower(K: Field, polys: Sequence[str]) -> tuple[Field, list[str]]:
    """Tower from stage polynomials; later stages may use earlier generators."""
    L = K
    names: list[str] = []
    for text in polys:
        v = _new_name(text, names)
        p = parse_polynomial(text, tuple(names) + (v,), K)
        gens = _generators(L, names)
        uni = p.substitute({nm: g for nm, g in zip(names, gens)}) if names else p
        coeffs = uni.to_univariate(v, field=L)
        L = Extension(L, coeffs, v)
        names.append(v)
    return L, names


def _generators(L: Field, names):
    stages = L.stages()
    return [L.wrap(L.embed(st.gen, st)) for st in stages][: len(names)]


def cmd_trace(args) -> tuple[str, dict]:
    K = parse_field(args.field or "Q")
    L, names = build_tower(K, args.ext)
    b = parse_polynomial(args.mult, tuple(names), K) if names else parse_polynomial(args.mult, ("_",), K)
    if names:
        value = b.evaluate(dict(zip(names, _generators(L, names))), L)
    else:
        value = L.wrap(b.constant_term())
    x = trace_form(L, value)
    return f"{display(x)}\n  {_invariant_line(x)}", {"result": gw_to_json(x), "degree": L.degree}


def _vars(text: str) -> tuple[str, ...]:
    names = tuple(v.strip() for v in text.replace(" ", ",").split(",") if v.strip())
    if not names:
        raise ParseError("--vars needs at least one variable name", 1, 1)
    return names


def cmd_milnor(args) -> tuple[str, dict]:
    K = parse_field(args.field or "Q")
    V = _vars(args.vars)
    f = parse_polynomial(args.f, V, K)
    x = a1_milnor(f, V)
    return f"{display(x)}\n  {_invariant_line(x)}", {"result": gw_to_json(x), "milnor_number": x.rank}


def cmd_ss(args) -> tuple[str, dict]:
    K = parse_field(args.field or "Q")
    V = _vars(args.vars)
    polys = [parse_polynomial(s, V, K) for s in args.s]
    J = local_factor_at_origin(build_quotient(polys, V))
    ss = ss_form(J, polys, V)
    x = ss.gw
    text = f"{display(x)}\n  {_invariant_line(x)}\n  local basis: {', '.join(J.basis_strings())}"
    return text, {"result": gw_to_json(x), "local_dimension": J.dimension, "basis": J.basis_strings()}


# ------------------------------------------------------------------- plumbing

def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags; their defaults are suppressed so a
    # flag given before the subcommand is not overwritten
    def d(value):
        return argparse.SUPPRESS if suppress else value

    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=d(False), help="machine-readable output")
    p.add_argument("--seed", type=int, default=d(DEFAULT_SEED), help="seed for randomized factorization")
    p.add_argument("--max-degree", type=int, default=d(DEFAULT_MAX_DEGREE),
                   help=f"factorization degree bound (default {DEFAULT_MAX_DEGREE})")
    p.add_argument("--field", default=d(None), help="base field: Q or Fp:<prime>")
    p.add_argument("-v", "--verbose", action="store_true", default=d(False))
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(suppress=True)
    ap = argparse.ArgumentParser(prog="gwcover", parents=[_global_flags(suppress=False)],
                                 description="Quadratic Euler characteristics in GW(k).")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cover", parents=[common], help="double cover of P^2 branched along V(F)")
    p.add_argument("config", help="config file, or inline text like 'field=Q; n=3; F=X0^6+X1^6+X2^6'")
    p.add_argument("--move-point", default=None, metavar="a,b,c",
                   help="substitute coordinates so that [0:0:1] maps to [a:b:c]")
    p.add_argument("--etale-check", action="store_true",
                   help="cross-check beta against the etale-algebra trace form when all m = 1")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("gw", parents=[common], help="evaluate a GW expression")
    p.add_argument("expr")
    p.set_defaults(func=cmd_gw)

    p = sub.add_parser("trace", parents=[common], help="trace form Tr_{L/k}<b>")
    p.add_argument("--ext", nargs="+", required=True, help="stage polynomials, bottom stage first")
    p.add_argument("--mult", default="1", help="multiplier b, a polynomial in the stage generators")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("milnor", parents=[common], help="A^1-Milnor number at the origin")
    p.add_argument("--vars", required=True)
    p.add_argument("--f", required=True)
    p.set_defaults(func=cmd_milnor)

    p = sub.add_parser("ss", parents=[common], help="Scheja-Storch form of s_1..s_r at the origin")
    p.add_argument("--vars", required=True)
    p.add_argument("--s", nargs="+", required=True)
    p.set_defaults(func=cmd_ss)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        text, data = args.func(args)
    except GWCoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
