"""Types of the second-order lambda-mu calculus.

Locally nameless representation: bound type variables are de Bruijn
indices, free ones are named atoms.  Alpha-equivalence is therefore
plain structural equality; binder hints are kept for printing only and
never participate in comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class MuType:
    __slots__ = ()


@dataclass(frozen=True)
class TVar(MuType):
    """Free type variable."""

    name: str


@dataclass(frozen=True)
class TBound(MuType):
    """Bound type variable (de Bruijn index)."""

    index: int


@dataclass(frozen=True)
class Arrow(MuType):
    dom: MuType
    cod: MuType


@dataclass(frozen=True)
class Forall(MuType):
    hint: str = field(compare=False, hash=False)
    body: MuType


#: The falsity type, forall X. X.
BOT: MuType = Forall("X", TBound(0))


def neg(ty: MuType) -> MuType:
    """sigma -> bot."""
    return Arrow(ty, BOT)


def is_bot(ty: MuType) -> bool:
    return isinstance(ty, Forall) and ty.body == TBound(0)


def is_neg(ty: MuType) -> bool:
    return isinstance(ty, Arrow) and is_bot(ty.cod)


def forall(name: str, body: MuType) -> MuType:
    """Bind the free type variable `name` in `body`."""
    return Forall(name, close_tvar(body, name))


def ftv(ty: MuType) -> frozenset[str]:
    match ty:
        case TVar(name):
            return frozenset((name,))
        case TBound(_):
            return frozenset()
        case Arrow(dom, cod):
            return ftv(dom) | ftv(cod)
        case Forall(_, body):
            return ftv(body)
    raise TypeError(ty)


def close_tvar(ty: MuType, name: str, depth: int = 0) -> MuType:
    match ty:
        case TVar(n):
            return TBound(depth) if n == name else ty
        case TBound(_):
            return ty
        case Arrow(dom, cod):
            return Arrow(close_tvar(dom, name, depth), close_tvar(cod, name, depth))
        case Forall(hint, body):
            return Forall(hint, close_tvar(body, name, depth + 1))
    raise TypeError(ty)


def open_tvar(ty: MuType, name: str, depth: int = 0) -> MuType:
    match ty:
        case TVar(_):
            return ty
        case TBound(k):
            return TVar(name) if k == depth else ty
        case Arrow(dom, cod):
            return Arrow(open_tvar(dom, name, depth), open_tvar(cod, name, depth))
        case Forall(hint, body):
            return Forall(hint, open_tvar(body, name, depth + 1))
    raise TypeError(ty)


def inst_tvar(ty: MuType, rep: MuType, depth: int = 0) -> MuType:
    """Replace the bound variable at `depth` by the locally closed `rep`."""
    match ty:
        case TVar(_):
            return ty
        case TBound(k):
            return rep if k == depth else ty
        case Arrow(dom, cod):
            return Arrow(inst_tvar(dom, rep, depth), inst_tvar(cod, rep, depth))
        case Forall(hint, body):
            return Forall(hint, inst_tvar(body, rep, depth + 1))
    raise TypeError(ty)


def subst_tvar(ty: MuType, name: str, rep: MuType) -> MuType:
    """Capture-avoiding substitution of a free type variable."""
    match ty:
        case TVar(n):
            return rep if n == name else ty
        case TBound(_):
            return ty
        case Arrow(dom, cod):
            return Arrow(subst_tvar(dom, name, rep), subst_tvar(cod, name, rep))
        case Forall(hint, body):
            return Forall(hint, subst_tvar(body, name, rep))
    raise TypeError(ty)


def locally_closed(ty: MuType, depth: int = 0) -> bool:
    match ty:
        case TVar(_):
            return True
        case TBound(k):
            return k < depth
        case Arrow(dom, cod):
            return locally_closed(dom, depth) and locally_closed(cod, depth)
        case Forall(_, body):
            return locally_closed(body, depth + 1)
    raise TypeError(ty)
