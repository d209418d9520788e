"""Command-line front end.

Subcommands: typecheck, cps, uncps, normalize, eq, focal-check,
free-theorem, catalog, suite.  Exit codes: 0 success, 1 a Distinct or
NoCertificate verdict where success was demanded, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import mu_terms as tm
from . import mu_types as mt
from .canonical import canonicalize, eq_target
from .combinators import abort, catalog, dne, exotic_numeral, church_succ, church_zero, peirce
from .cps import cps_context, cps_term_typed
from .focality import NoCertificate, certificate_to_dict, check_focal
from .inverse import invert
from .mu_typing import MuTypeError, typecheck_mu
from .printer import (
    print_mu_term,
    print_mu_type,
    print_target_term,
    print_target_type,
    sexpr_mu_term,
    sexpr_target_term,
)
from .relations import formula_to_sexpr, free_theorem, open_obligations, print_formula
from .surface import (
    MuParseError,
    parse_mu_term,
    parse_mu_type,
    parse_target_term,
    parse_target_type,
    resolve_packs,
)
from .target_typing import PARAMETRIC, PLAIN, TargetTypeError, typecheck_target
from .theory import BETA_ETA, LAMBDA_MU_2P, eq_mu

THEORIES = {"beta-eta": BETA_ETA, "p": LAMBDA_MU_2P}


class CliError(Exception):
    pass


def _parse_bindings(spec: str | None):
    out = []
    if not spec:
        return tuple(out)
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, _, ty = chunk.partition(":")
        if not ty:
            raise CliError(f"binding {chunk!r} is not of the form name:type")
        out.append((name.strip(), parse_mu_type(ty.strip())))
    return tuple(out)


def _polymorphic_catalog():
    a, b = mt.TVar("X"), mt.TVar("Y")
    return {
        "C": tm.tylam("X", dne(a)),
        "P": tm.tylam("X", tm.tylam("Y", peirce(a, b))),
        "A": tm.tylam("X", abort(a)),
        "O": church_zero(),
        "S": church_succ(),
        "exotic": exotic_numeral(),
    }


def _resolve_catalog_names(term: tm.MuTerm, bound: set[str]) -> tm.MuTerm:
    for name, combinator in _polymorphic_catalog().items():
        if name in tm.fv(term) and name not in bound:
            term = tm.subst_term(term, name, combinator)
    return term


def _load_mu(args, text: str) -> tuple[tm.MuTerm, tuple, tuple]:
    gamma = _parse_bindings(getattr(args, "ctx", None))
    delta = _parse_bindings(getattr(args, "names", None))
    term = parse_mu_term(text)
    term = _resolve_catalog_names(term, {n for n, _ in gamma} | {n for n, _ in delta})
    return term, gamma, delta


def cmd_typecheck(args) -> int:
    if args.target:
        term = parse_target_term(args.expr)
        tctx = tuple((n, parse_target_type(t)) for n, t in _split_raw(args.ctx))
        term = resolve_packs(term, tctx, args.mode)
        ty = typecheck_target(tctx, term, args.mode)
        print(print_target_type(ty))
        return 0
    term, gamma, delta = _load_mu(args, args.expr)
    ty = typecheck_mu(gamma, delta, term)
    print(print_mu_type(ty))
    return 0


def _split_raw(spec: str | None):
    if not spec:
        return []
    out = []
    for chunk in spec.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        name, _, ty = chunk.partition(":")
        out.append((name.strip(), ty.strip()))
    return out


def cmd_cps(args) -> int:
    term, gamma, delta = _load_mu(args, args.expr)
    target, ty = cps_term_typed(gamma, delta, term)
    if args.ast:
        print(sexpr_target_term(target))
    else:
        print(print_target_term(target))
    print(f". : ¬{print_mu_type(ty, prec=2)}°", file=sys.stderr)
    return 0


def cmd_normalize(args) -> int:
    mode = PARAMETRIC if args.mode == "parametric" else PLAIN
    if args.target:
        from .surface import parse_target_type

        tctx = tuple((n, parse_target_type(t)) for n, t in _split_raw(args.ctx))
        term = resolve_packs(parse_target_term(args.expr), tctx, mode)
    else:
        source, gamma, delta = _load_mu(args, args.expr)
        term, _ = cps_term_typed(gamma, delta, source)
        tctx = cps_context(gamma, delta)
    form = canonicalize(term, None, mode, tctx)
    print(print_target_term(form.term))
    print(f". {form.kind} : {print_target_type(form.type)}", file=sys.stderr)
    if args.trace:
        for step in form.trace:
            print(step.render(), file=sys.stderr)
    return 0


def cmd_uncps(args) -> int:
    from .surface import parse_target_type

    gamma = _parse_bindings(args.ctx)
    delta = _parse_bindings(args.names)
    tctx = cps_context(gamma, delta)
    term = resolve_packs(parse_target_term(args.expr), tctx, PLAIN)
    form = canonicalize(term, None, PLAIN, tctx)
    result = invert(form, tctx)
    if form.kind == "continuation":
        hole = tm.Var("HOLE")
        print(print_mu_term(result(hole)))
        print(f". context with hole HOLE : {print_mu_type(result.hole_type)}", file=sys.stderr)
    else:
        print(print_mu_term(result) if not args.ast else sexpr_mu_term(result))
    return 0


def cmd_eq(args) -> int:
    theory = THEORIES[args.theory]
    if args.target:
        from .surface import parse_target_type

        tctx = tuple((n, parse_target_type(t)) for n, t in _split_raw(args.ctx))
        mode = PARAMETRIC if theory == LAMBDA_MU_2P else PLAIN
        left = resolve_packs(parse_target_term(args.left), tctx, mode)
        right = resolve_packs(parse_target_term(args.right), tctx, mode)
        verdict = eq_target(left, right, mode, tctx)
    else:
        left, gamma, delta = _load_mu(args, args.left)
        right = parse_mu_term(args.right)
        right = _resolve_catalog_names(
            right, {n for n, _ in gamma} | {n for n, _ in delta}
        )
        verdict = eq_mu(left, right, theory, gamma, delta)
    if args.trace:
        for step in verdict.left_trace:
            print(f"L {step.render()}", file=sys.stderr)
        for step in verdict.right_trace:
            print(f"R {step.render()}", file=sys.stderr)
    if verdict.equal:
        print("Equal")
        print(print_target_term(verdict.shared))
        return 0
    print("Distinct")
    print(print_target_term(verdict.left))
    print(print_target_term(verdict.right))
    return 1


def cmd_focal_check(args) -> int:
    term, gamma, delta = _load_mu(args, args.expr)
    s1 = parse_mu_type(args.source)
    s2 = parse_mu_type(args.to)
    cert = check_focal(term, s1, s2, gamma, delta)
    if isinstance(cert, NoCertificate):
        print(json.dumps({"certificate": None, "reason": cert.reason}, indent=2))
        return 1
    print(json.dumps(certificate_to_dict(cert), indent=2, ensure_ascii=False))
    return 0


def cmd_free_theorem(args) -> int:
    ty = parse_mu_type(args.type)
    formula = free_theorem(ty)
    if args.ast:
        print(formula_to_sexpr(formula))
    else:
        print(print_formula(formula))
    return 0


def cmd_catalog(args) -> int:
    for entry in catalog():
        print(f"{entry.name:16s} : {print_mu_type(entry.type)}")
        print(f"{'':16s}   [{entry.ref}] {entry.description}")
    print()
    print("open obligations (emitted, never decided):")
    for ob in open_obligations(run_oracle=args.oracle):
        print(f"  {ob.key:24s} [{ob.ref}] {ob.status}")
        if args.oracle:
            for note in ob.notes:
                print(f"    note: {note}")
    return 0


def cmd_suite(args) -> int:
    from .suite_runner import run_acceptance

    results = run_acceptance(seed=args.seed, generated=args.generated, golden=args.golden_dir)
    failed = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} criterion {r.number}: {r.name} :: {r.detail}")
        failed += not r.passed
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mu2forge",
        description="second-order lambda-mu kernel: typing, CPS, equality, focality, free theorems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, ctx_help="gamma bindings, e.g. 'x:s, f:s -> t'"):
        p.add_argument("--ctx", help=ctx_help)
        p.add_argument("--names", help="delta bindings (continuation names)")

    p = sub.add_parser("typecheck", help="synthesise the type of a term")
    p.add_argument("expr")
    p.add_argument("--target", action="store_true", help="typecheck a target-calculus term")
    p.add_argument("--mode", choices=["plain", "parametric"], default="plain")
    common(p)
    p.set_defaults(fn=cmd_typecheck)

    p = sub.add_parser("cps", help="translate a source term")
    p.add_argument("expr")
    p.add_argument("--ast", action="store_true", help="print the s-expression AST")
    common(p)
    p.set_defaults(fn=cmd_cps)

    p = sub.add_parser("normalize", help="canonicalize (a translation of) a term")
    p.add_argument("expr")
    p.add_argument("--target", action="store_true")
    p.add_argument("--mode", choices=["plain", "parametric"], default="plain")
    p.add_argument("--trace", action="store_true", help="print the rewrite trace")
    common(p)
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("uncps", help="invert a canonical target program")
    p.add_argument("expr")
    p.add_argument("--ast", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_uncps)

    p = sub.add_parser("eq", help="decide an equation")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--theory", choices=sorted(THEORIES), default="p")
    p.add_argument("--target", action="store_true", help="compare target-calculus terms")
    p.add_argument("--trace", action="store_true")
    common(p)
    p.set_defaults(fn=cmd_eq)

    p = sub.add_parser("focal-check", help="extract a focality certificate")
    p.add_argument("expr")
    p.add_argument("--source", required=True, help="domain type")
    p.add_argument("--to", required=True, help="codomain type")
    common(p)
    p.set_defaults(fn=cmd_focal_check)

    p = sub.add_parser("free-theorem", help="emit the parametricity statement of a closed type")
    p.add_argument("type")
    p.add_argument("--ast", action="store_true")
    p.set_defaults(fn=cmd_free_theorem)

    p = sub.add_parser("catalog", help="list the combinator corpus and open obligations")
    p.add_argument("--oracle", action="store_true", help="also run instance checks")
    p.set_defaults(fn=cmd_catalog)

    p = sub.add_parser("suite", help="run the acceptance corpus")
    p.add_argument("--seed", type=int, default=20240)
    p.add_argument("--generated", type=int, default=1000)
    p.add_argument("--golden-dir", default=None)
    p.set_defaults(fn=cmd_suite)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (MuParseError, MuTypeError, TargetTypeError, CliError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
