"""Typing for the target calculus.

Modes: "plain" is the pure syntax; "parametric" additionally admits the
constant Star at type exists X. X.
"""

from __future__ import annotations

from .target_types import (
    Conj,
    Exists,
    Neg,
    R,
    RType,
    TOP,
    TargetType,
    TgVarT,
    ftv,
    inst_tvar,
)
from .target_terms import (
    LetPack,
    LetPair,
    Pack,
    Pair,
    Star,
    TargetTerm,
    TgApp,
    TgBVar,
    TgLam,
    TgVar,
    fresh,
    open_tvar_term,
    open_var,
)

PLAIN = "plain"
PARAMETRIC = "parametric"


class TargetTypeError(Exception):
    pass


class UnboundTargetVariable(TargetTypeError):
    pass


class NonAnswerBody(TargetTypeError):
    pass


class EscapeCheckFailed(TargetTypeError):
    pass


class StarInPlainMode(TargetTypeError):
    pass


class TargetTypeMismatch(TargetTypeError):
    pass


TgContext = tuple[tuple[str, TargetType], ...]


def tg_ctx(*pairs: tuple[str, TargetType]) -> TgContext:
    return tuple(pairs)


def _lookup(context: TgContext, name: str) -> TargetType | None:
    for n, ty in context:
        if n == name:
            return ty
    return None


def typecheck_target(context: TgContext, term: TargetTerm, mode: str = PLAIN) -> TargetType:
    match term:
        case TgVar(n):
            ty = _lookup(context, n)
            if ty is None:
                raise UnboundTargetVariable(n)
            return ty
        case TgBVar(k):
            raise TargetTypeError(f"dangling bound variable {k}")
        case Star():
            if mode != PARAMETRIC:
                raise StarInPlainMode("Star is legal only in parametric mode")
            return TOP
        case TgLam(hint, ann, body):
            x = fresh(hint or "x")
            body_ty = typecheck_target(context + ((x, ann),), open_var(body, x), mode)
            if not isinstance(body_ty, RType):
                raise NonAnswerBody(f"abstraction body has type {body_ty}, not R")
            return Neg(ann)
        case TgApp(fn, arg):
            fn_ty = typecheck_target(context, fn, mode)
            if not isinstance(fn_ty, Neg):
                raise TargetTypeMismatch(f"application of non-negation type {fn_ty}")
            arg_ty = typecheck_target(context, arg, mode)
            if arg_ty != fn_ty.body:
                raise TargetTypeMismatch(
                    f"argument type {arg_ty} does not match expected {fn_ty.body}"
                )
            return R
        case Pair(left, right):
            return Conj(
                typecheck_target(context, left, mode),
                typecheck_target(context, right, mode),
            )
        case LetPair(hx, hy, scrut, body):
            scrut_ty = typecheck_target(context, scrut, mode)
            if not isinstance(scrut_ty, Conj):
                raise TargetTypeMismatch(f"let-pair scrutinee has type {scrut_ty}")
            x, y = fresh(hx or "x"), fresh(hy or "y")
            opened = open_var(open_var(body, y), x, 1)
            ctx2 = context + ((x, scrut_ty.left), (y, scrut_ty.right))
            return typecheck_target(ctx2, opened, mode)
        case Pack(witness, payload, ex_ann):
            if not isinstance(ex_ann, Exists):
                raise TargetTypeMismatch(f"pack annotated with non-existential {ex_ann}")
            payload_ty = typecheck_target(context, payload, mode)
            want = inst_tvar(ex_ann.body, witness)
            if payload_ty != want:
                raise TargetTypeMismatch(
                    f"pack payload has type {payload_ty}, expected {want}"
                )
            return ex_ann
        case LetPack(ht, hx, scrut, body):
            scrut_ty = typecheck_target(context, scrut, mode)
            if not isinstance(scrut_ty, Exists):
                raise TargetTypeMismatch(f"let-pack scrutinee has type {scrut_ty}")
            tv, x = fresh(ht or "X"), fresh(hx or "x")
            opened = open_var(open_tvar_term(body, tv), x)
            ctx2 = context + ((x, inst_tvar(scrut_ty.body, TgVarT(tv))),)
            result = typecheck_target(ctx2, opened, mode)
            if tv in ftv(result):
                raise EscapeCheckFailed(
                    f"type variable {tv} escapes through the let-pack result {result}"
                )
            return result
    raise TypeError(term)
