"""Terms of the second-order lambda-mu calculus.

Three disjoint binder namespaces: term variables (bound by Lam), type
variables (bound by TyLam, and by Forall inside annotations), and names
a.k.a. continuation variables (bound by Mu).  Each namespace has its own
de Bruijn index stream; a binder shifts only its own stream.

The single name-introducing construct is the core form  mu a:s. [b] M
(node ``Mu``).  The named-term and bold-mu sugar of the surface language
desugar onto it via :func:`named` and :func:`bold_mu`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .mu_types import (
    BOT,
    MuType,
    close_tvar,
    ftv,
    inst_tvar,
    is_bot,
    open_tvar,
    subst_tvar,
)

_fresh_counter = itertools.count(1)


def fresh(base: str = "x") -> str:
    """Globally fresh atom; the numeric suffix never collides with user input."""
    return f"{base}%{next(_fresh_counter)}"


def base_name(atom: str) -> str:
    return atom.split("%", 1)[0]


class MuTerm:
    __slots__ = ()


@dataclass(frozen=True)
class Var(MuTerm):
    name: str


@dataclass(frozen=True)
class BVar(MuTerm):
    index: int


@dataclass(frozen=True)
class Lam(MuTerm):
    hint: str = field(compare=False, hash=False)
    ann: MuType
    body: MuTerm


@dataclass(frozen=True)
class App(MuTerm):
    fn: MuTerm
    arg: MuTerm


@dataclass(frozen=True)
class TyLam(MuTerm):
    hint: str = field(compare=False, hash=False)
    body: MuTerm


@dataclass(frozen=True)
class TyApp(MuTerm):
    fn: MuTerm
    ty: MuType


@dataclass(frozen=True)
class FName:
    """Free name occurrence (naming target of a Mu node)."""

    name: str


@dataclass(frozen=True)
class BName:
    """Bound name occurrence; index 0 is the nearest enclosing Mu."""

    index: int


NameRef = FName | BName


@dataclass(frozen=True)
class Mu(MuTerm):
    """mu a:ann. [target] body, binding the name ``a`` in target and body."""

    hint: str = field(compare=False, hash=False)
    ann: MuType
    target: NameRef
    body: MuTerm


# ---------------------------------------------------------------------------
# Smart constructors (nameful API; they close over the given atoms)


def lam(x: str, ann: MuType, body: MuTerm) -> MuTerm:
    return Lam(x, ann, close_var(body, x))


def tylam(x: str, body: MuTerm) -> MuTerm:
    return TyLam(x, close_tvar_term(body, x))


def mu(a: str, ann: MuType, target: str, body: MuTerm) -> MuTerm:
    tgt: NameRef = BName(0) if target == a else FName(target)
    return Mu(a, ann, tgt, close_name(body, a))


def named(b: str, body: MuTerm) -> MuTerm:
    """The named term  [b] M  :=  mu a:bot. [b] M  with a fresh and unused."""
    return Mu("_", BOT, FName(b), body)


def bold_mu(a: str, ann: MuType, body: MuTerm) -> MuTerm:
    """Bold mu-abstraction  mu* a:s. M  :=  mu a:s. [a] (M s)  for M : bot."""
    return mu(a, ann, a, TyApp(body, ann))


def match_named(t: MuTerm) -> tuple[NameRef, MuTerm] | None:
    """Recognise the named-term sugar; returns (target, body) when t = [b] M."""
    if (
        isinstance(t, Mu)
        and is_bot(t.ann)
        and t.target != BName(0)
        and not uses_bound_name(t.body, 0)
    ):
        return t.target, t.body
    return None


def match_bold_mu(t: MuTerm) -> tuple[MuType, MuTerm] | None:
    """Recognise bold-mu sugar; returns (ann, M) when t = mu a:s. [a](M s).

    The abstracted name may occur inside M (it usually does)."""
    if (
        isinstance(t, Mu)
        and t.target == BName(0)
        and isinstance(t.body, TyApp)
        and t.body.ty == t.ann
    ):
        return t.ann, t.body.fn
    return None


# ---------------------------------------------------------------------------
# Traversal helpers.  Depth counters are per-namespace; only the binder of
# the matching namespace increments the counter.


def _map_types(t: MuTerm, f, depth: int) -> MuTerm:
    """Apply f(type, type_depth) to every type inside t."""
    match t:
        case Var(_) | BVar(_):
            return t
        case Lam(hint, ann, body):
            return Lam(hint, f(ann, depth), _map_types(body, f, depth))
        case App(fn, arg):
            return App(_map_types(fn, f, depth), _map_types(arg, f, depth))
        case TyLam(hint, body):
            return TyLam(hint, _map_types(body, f, depth + 1))
        case TyApp(fn, ty):
            return TyApp(_map_types(fn, f, depth), f(ty, depth))
        case Mu(hint, ann, target, body):
            return Mu(hint, f(ann, depth), target, _map_types(body, f, depth))
    raise TypeError(t)


def close_var(t: MuTerm, x: str, depth: int = 0) -> MuTerm:
    match t:
        case Var(n):
            return BVar(depth) if n == x else t
        case BVar(_):
            return t
        case Lam(hint, ann, body):
            return Lam(hint, ann, close_var(body, x, depth + 1))
        case App(fn, arg):
            return App(close_var(fn, x, depth), close_var(arg, x, depth))
        case TyLam(hint, body):
            return TyLam(hint, close_var(body, x, depth))
        case TyApp(fn, ty):
            return TyApp(close_var(fn, x, depth), ty)
        case Mu(hint, ann, target, body):
            return Mu(hint, ann, target, close_var(body, x, depth))
    raise TypeError(t)


def open_var(t: MuTerm, x: str, depth: int = 0) -> MuTerm:
    match t:
        case Var(_):
            return t
        case BVar(k):
            return Var(x) if k == depth else t
        case Lam(hint, ann, body):
            return Lam(hint, ann, open_var(body, x, depth + 1))
        case App(fn, arg):
            return App(open_var(fn, x, depth), open_var(arg, x, depth))
        case TyLam(hint, body):
            return TyLam(hint, open_var(body, x, depth))
        case TyApp(fn, ty):
            return TyApp(open_var(fn, x, depth), ty)
        case Mu(hint, ann, target, body):
            return Mu(hint, ann, target, open_var(body, x, depth))
    raise TypeError(t)


def inst_var(t: MuTerm, rep: MuTerm, depth: int = 0) -> MuTerm:
    """Replace the bound term variable at `depth` by the locally closed rep."""
    match t:
        case Var(_):
            return t
        case BVar(k):
            return rep if k == depth else t
        case Lam(hint, ann, body):
            return Lam(hint, ann, inst_var(body, rep, depth + 1))
        case App(fn, arg):
            return App(inst_var(fn, rep, depth), inst_var(arg, rep, depth))
        case TyLam(hint, body):
            return TyLam(hint, inst_var(body, rep, depth))
        case TyApp(fn, ty):
            return TyApp(inst_var(fn, rep, depth), ty)
        case Mu(hint, ann, target, body):
            return Mu(hint, ann, target, inst_var(body, rep, depth))
    raise TypeError(t)


def close_name(t: MuTerm, a: str, depth: int = 0) -> MuTerm:
    """Abstract free name a; a Mu node's target sits inside its own binder."""
    match t:
        case Var(_) | BVar(_):
            return t
        case Lam(hint, ann, body):
            return Lam(hint, ann, close_name(body, a, depth))
        case App(fn, arg):
            return App(close_name(fn, a, depth), close_name(arg, a, depth))
        case TyLam(hint, body):
            return TyLam(hint, close_name(body, a, depth))
        case TyApp(fn, ty):
            return TyApp(close_name(fn, a, depth), ty)
        case Mu(hint, ann, target, body):
            tgt = BName(depth + 1) if target == FName(a) else target
            return Mu(hint, ann, tgt, close_name(body, a, depth + 1))
    raise TypeError(t)


def open_name(t: MuTerm, a: str, depth: int = 0) -> MuTerm:
    match t:
        case Var(_) | BVar(_):
            return t
        case Lam(hint, ann, body):
            return Lam(hint, ann, open_name(body, a, depth))
        case App(fn, arg):
            return App(open_name(fn, a, depth), open_name(arg, a, depth))
        case TyLam(hint, body):
            return TyLam(hint, open_name(body, a, depth))
        case TyApp(fn, ty):
            return TyApp(open_name(fn, a, depth), ty)
        case Mu(hint, ann, target, body):
            tgt = FName(a) if target == BName(depth + 1) else target
            return Mu(hint, ann, tgt, open_name(body, a, depth + 1))
    raise TypeError(t)


def uses_bound_name(t: MuTerm, depth: int) -> bool:
    match t:
        case Var(_) | BVar(_):
            return False
        case Lam(_, _, body):
            return uses_bound_name(body, depth)
        case App(fn, arg):
            return uses_bound_name(fn, depth) or uses_bound_name(arg, depth)
        case TyLam(_, body):
            return uses_bound_name(body, depth)
        case TyApp(fn, _):
            return uses_bound_name(fn, depth)
        case Mu(_, _, target, body):
            return target == BName(depth + 1) or uses_bound_name(body, depth + 1)
    raise TypeError(t)


def close_tvar_term(t: MuTerm, x: str) -> MuTerm:
    return _map_types(t, lambda ty, d: close_tvar(ty, x, d), 0)


def open_tvar_term(t: MuTerm, x: str) -> MuTerm:
    return _map_types(t, lambda ty, d: open_tvar(ty, x, d), 0)


def inst_tvar_term(t: MuTerm, rep: MuType) -> MuTerm:
    return _map_types(t, lambda ty, d: inst_tvar(ty, rep, d), 0)


# ---------------------------------------------------------------------------
# Free-atom sets


def fv(t: MuTerm) -> frozenset[str]:
    match t:
        case Var(n):
            return frozenset((n,))
        case BVar(_):
            return frozenset()
        case Lam(_, _, body):
            return fv(body)
        case App(fn, arg):
            return fv(fn) | fv(arg)
        case TyLam(_, body):
            return fv(body)
        case TyApp(fn, _):
            return fv(fn)
        case Mu(_, _, _, body):
            return fv(body)
    raise TypeError(t)


def fn(t: MuTerm) -> frozenset[str]:
    match t:
        case Var(_) | BVar(_):
            return frozenset()
        case Lam(_, _, body):
            return fn(body)
        case App(fun, arg):
            return fn(fun) | fn(arg)
        case TyLam(_, body):
            return fn(body)
        case TyApp(fun, _):
            return fn(fun)
        case Mu(_, _, target, body):
            here = frozenset((target.name,)) if isinstance(target, FName) else frozenset()
            return here | fn(body)
    raise TypeError(t)


def ftv_term(t: MuTerm) -> frozenset[str]:
    acc: set[str] = set()
    _map_types(t, lambda ty, d: (acc.update(ftv(ty)), ty)[1], 0)
    return frozenset(acc)


# ---------------------------------------------------------------------------
# Substitutions.  All are capture-avoiding for free: bound occurrences are
# indices, and replacement terms are locally closed.


def subst_term(t: MuTerm, x: str, rep: MuTerm) -> MuTerm:
    """M[rep/x] for a free term variable x."""
    match t:
        case Var(n):
            return rep if n == x else t
        case BVar(_):
            return t
        case Lam(hint, ann, body):
            return Lam(hint, ann, subst_term(body, x, rep))
        case App(fun, arg):
            return App(subst_term(fun, x, rep), subst_term(arg, x, rep))
        case TyLam(hint, body):
            return TyLam(hint, subst_term(body, x, rep))
        case TyApp(fun, ty):
            return TyApp(subst_term(fun, x, rep), ty)
        case Mu(hint, ann, target, body):
            return Mu(hint, ann, target, subst_term(body, x, rep))
    raise TypeError(t)


def subst_type(t: MuTerm, x: str, rep: MuType) -> MuTerm:
    """M[rep/X] for a free type variable X (annotations and type arguments)."""
    return _map_types(t, lambda ty, d: subst_tvar(ty, x, rep), 0)


def rename_name(t: MuTerm, a: str, b: str) -> MuTerm:
    """M[b/a] for free names: every naming target a becomes b."""
    match t:
        case Var(_) | BVar(_):
            return t
        case Lam(hint, ann, body):
            return Lam(hint, ann, rename_name(body, a, b))
        case App(fun, arg):
            return App(rename_name(fun, a, b), rename_name(arg, a, b))
        case TyLam(hint, body):
            return TyLam(hint, rename_name(body, a, b))
        case TyApp(fun, ty):
            return TyApp(rename_name(fun, a, b), ty)
        case Mu(hint, ann, target, body):
            tgt = FName(b) if target == FName(a) else target
            return Mu(hint, ann, tgt, rename_name(body, a, b))
    raise TypeError(t)


# ---------------------------------------------------------------------------
# Mixed substitution


@dataclass(frozen=True)
class AppArg:
    arg: MuTerm


@dataclass(frozen=True)
class TyArg:
    ty: MuType


@dataclass(frozen=True)
class Rename:
    name: str


MixedMode = AppArg | TyArg | Rename


def mixed_subst(t: MuTerm, a: str, mode: MixedMode, b: str | None = None) -> MuTerm:
    """Replace namings [a]L inside t by [b](L' N), [b](L' s) or [b]L'.

    L is rewritten first (innermost namings are transformed before the
    enclosing one), matching the recursive reading of the structural mu
    axioms.  For Rename the new target is mode.name; otherwise b (fresh
    when omitted).
    """
    if b is None:
        b = mode.name if isinstance(mode, Rename) else fresh("b")

    def wrap(body: MuTerm) -> MuTerm:
        match mode:
            case AppArg(arg):
                return App(body, arg)
            case TyArg(ty):
                return TyApp(body, ty)
            case Rename(_):
                return body
        raise TypeError(mode)

    match t:
        case Var(_) | BVar(_):
            return t
        case Lam(hint, ann, body):
            return Lam(hint, ann, mixed_subst(body, a, mode, b))
        case App(fun, arg):
            return App(mixed_subst(fun, a, mode, b), mixed_subst(arg, a, mode, b))
        case TyLam(hint, body):
            return TyLam(hint, mixed_subst(body, a, mode, b))
        case TyApp(fun, ty):
            return TyApp(mixed_subst(fun, a, mode, b), ty)
        case Mu(hint, ann, target, body):
            body2 = mixed_subst(body, a, mode, b)
            if target == FName(a):
                return Mu(hint, ann, FName(b), wrap(body2))
            return Mu(hint, ann, target, body2)
    raise TypeError(t)


def mixed_subst_naming(
    target: NameRef, body: MuTerm, a: str, mode: MixedMode, b: str | None = None
) -> tuple[NameRef, MuTerm]:
    """Mixed substitution applied to a bare naming [target]body."""
    if b is None:
        b = mode.name if isinstance(mode, Rename) else fresh("b")
    body2 = mixed_subst(body, a, mode, b)
    if target == FName(a):
        match mode:
            case AppArg(arg):
                return FName(b), App(body2, arg)
            case TyArg(ty):
                return FName(b), TyApp(body2, ty)
            case Rename(_):
                return FName(b), body2
    return target, body2


def locally_closed_term(t: MuTerm, vd: int = 0, td: int = 0, nd: int = 0) -> bool:
    from .mu_types import locally_closed as tlc

    match t:
        case Var(_):
            return True
        case BVar(k):
            return k < vd
        case Lam(_, ann, body):
            return tlc(ann, td) and locally_closed_term(body, vd + 1, td, nd)
        case App(fun, arg):
            return locally_closed_term(fun, vd, td, nd) and locally_closed_term(arg, vd, td, nd)
        case TyLam(_, body):
            return locally_closed_term(body, vd, td + 1, nd)
        case TyApp(fun, ty):
            return tlc(ty, td) and locally_closed_term(fun, vd, td, nd)
        case Mu(_, ann, target, body):
            tgt_ok = not isinstance(target, BName) or target.index < nd + 1
            return tlc(ann, td) and tgt_ok and locally_closed_term(body, vd, td, nd + 1)
    raise TypeError(t)
