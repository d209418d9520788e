"""Surface syntax for both calculi.

ASCII spellings:  \\x:t. M,  /\\X. M,  M N,  M [t],  mu a:t. [b] M,
mu* a:t. M (bold mu),  [b] M (named term),  bot,  not t,  forall X. t,
t -> t;  target adds  R,  t /\\ t,  exists X. t,  <M, N>,  <t | M>
(pack, optionally <t | M : T> with its existential type),  let <x,y> =
M in N,  let <X,x> = M in N (pack elimination when the first binder is
capitalised),  * (Star).  The printers' UTF-8 spellings are accepted as
synonyms, so parse(print(t)) = t.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import mu_terms as tm
from . import mu_types as mt
from . import target_terms as tg
from . import target_types as tt


class MuParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


_UNICODE = {
    "λ": "\\",
    "Λ": "/\\",
    "μ": "mu",
    "∀": "forall",
    "∃": "exists",
    "¬": "not",
    "⊥": "bot",
    "→": "->",
    "⇒": "->",
    "∧": "/\\",
    "⟨": "<",
    "⟩": ">",
    "⋆": "*",
}

_PUNCT = ("/\\", "->", "\\", ".", ":", "(", ")", "[", "]", "<", ">", ",", "|", "*", "=")


@dataclass(frozen=True)
class Token:
    kind: str  # "ident" | "punct"
    text: str
    line: int
    col: int
    end_col: int = 0


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in _UNICODE:
            rep = _UNICODE[ch]
            kind = "ident" if rep.isalpha() else "punct"
            tokens.append(Token(kind, rep, line, col, col + 1))
            i += 1
            col += 1
            continue
        matched = None
        for p in _PUNCT:
            if text.startswith(p, i):
                matched = p
                break
        if matched:
            tokens.append(Token("punct", matched, line, col, col + len(matched)))
            i += len(matched)
            col += len(matched)
            continue
        if ch.isalnum() or ch in "_'":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            tokens.append(Token("ident", text[i:j], line, col, col + (j - i)))
            col += j - i
            i = j
            continue
        raise MuParseError(f"unexpected character {ch!r}", line, col)
    # merge an adjacent  mu *  into the bold-mu keyword
    out: list[Token] = []
    k = 0
    while k < len(tokens):
        t = tokens[k]
        if (
            t.kind == "ident"
            and t.text == "mu"
            and k + 1 < len(tokens)
            and tokens[k + 1].text == "*"
            and tokens[k + 1].line == t.line
            and tokens[k + 1].col == t.end_col
        ):
            out.append(Token("ident", "mu*", t.line, t.col, tokens[k + 1].end_col))
            k += 2
        else:
            out.append(t)
            k += 1
    return out


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise self.eof("unexpected end of input")
        self.pos += 1
        return tok

    def eof(self, message: str) -> MuParseError:
        last = self.tokens[-1] if self.tokens else Token("punct", "", 1, 1, 1)
        return MuParseError(message, last.line, last.end_col or last.col)

    def expect(self, text: str) -> Token:
        tok = self.next()
        if tok.text != text:
            raise MuParseError(f"expected {text!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    def ident(self) -> str:
        tok = self.next()
        if tok.kind != "ident" or tok.text in (
            "mu", "mu*", "let", "in", "not", "bot", "forall", "exists",
        ):
            raise MuParseError(f"expected an identifier, found {tok.text!r}", tok.line, tok.col)
        return tok.text

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise MuParseError(f"trailing input at {tok.text!r}", tok.line, tok.col)


# ---------------------------------------------------------------------------
# Source types


def _mu_type(p: _Parser) -> mt.MuType:
    left = _mu_type_atom(p)
    if p.at("->"):
        p.next()
        return mt.Arrow(left, _mu_type(p))
    return left


def _mu_type_atom(p: _Parser) -> mt.MuType:
    tok = p.peek()
    if tok is None:
        raise p.eof("expected a type")
    if tok.text == "bot":
        p.next()
        return mt.BOT
    if tok.text == "not":
        p.next()
        return mt.neg(_mu_type_atom(p))
    if tok.text == "forall":
        p.next()
        x = p.ident()
        p.expect(".")
        return mt.forall(x, _mu_type(p))
    if tok.text == "(":
        p.next()
        ty = _mu_type(p)
        p.expect(")")
        return ty
    if tok.kind == "ident":
        p.next()
        return mt.TVar(tok.text)
    raise MuParseError(f"expected a type, found {tok.text!r}", tok.line, tok.col)


def parse_mu_type(text: str) -> mt.MuType:
    p = _Parser(text)
    ty = _mu_type(p)
    p.done()
    return ty


# ---------------------------------------------------------------------------
# Source terms


def _mu_term(p: _Parser) -> tm.MuTerm:
    tok = p.peek()
    if tok is None:
        raise p.eof("expected a term")
    if tok.text == "\\":
        p.next()
        x = p.ident()
        p.expect(":")
        ann = _mu_type(p)
        p.expect(".")
        return tm.lam(x, ann, _mu_term(p))
    if tok.text == "/\\":
        p.next()
        x = p.ident()
        p.expect(".")
        return tm.tylam(x, _mu_term(p))
    if tok.text == "mu":
        p.next()
        a = p.ident()
        p.expect(":")
        ann = _mu_type(p)
        p.expect(".")
        p.expect("[")
        b = p.ident()
        p.expect("]")
        return tm.mu(a, ann, b, _mu_term(p))
    if tok.text == "mu*":
        p.next()
        a = p.ident()
        p.expect(":")
        ann = _mu_type(p)
        p.expect(".")
        return tm.bold_mu(a, ann, _mu_term(p))
    if tok.text == "[":
        p.next()
        b = p.ident()
        p.expect("]")
        return tm.named(b, _mu_term(p))
    return _mu_app(p)


def _mu_app(p: _Parser) -> tm.MuTerm:
    term = _mu_atom(p)
    while True:
        tok = p.peek()
        if tok is None:
            return term
        if tok.text == "[":
            p.next()
            ty = _mu_type(p)
            p.expect("]")
            term = tm.TyApp(term, ty)
            continue
        if tok.text == "(" or (tok.kind == "ident" and tok.text not in ("in",)):
            if tok.text in ("mu", "mu*", "let", "not", "bot", "forall", "exists"):
                return term
            term = tm.App(term, _mu_atom(p))
            continue
        if tok.text in ("\\", "/\\"):
            term = tm.App(term, _mu_term(p))
            continue
        return term


def _mu_atom(p: _Parser) -> tm.MuTerm:
    tok = p.next()
    if tok.text == "(":
        term = _mu_term(p)
        p.expect(")")
        return term
    if tok.kind == "ident":
        return tm.Var(tok.text)
    raise MuParseError(f"expected a term, found {tok.text!r}", tok.line, tok.col)


def parse_mu_term(text: str) -> tm.MuTerm:
    p = _Parser(text)
    term = _mu_term(p)
    p.done()
    return term


# ---------------------------------------------------------------------------
# Target types


def _tg_type(p: _Parser) -> tt.TargetType:
    left = _tg_type_atom(p)
    if p.at("/\\"):
        p.next()
        return tt.Conj(left, _tg_type(p))
    return left


def _tg_type_atom(p: _Parser) -> tt.TargetType:
    tok = p.peek()
    if tok is None:
        raise p.eof("expected a type")
    if tok.text == "R":
        p.next()
        return tt.R
    if tok.text == "not":
        p.next()
        return tt.Neg(_tg_type_atom(p))
    if tok.text == "exists":
        p.next()
        x = p.ident()
        p.expect(".")
        return tt.exists(x, _tg_type(p))
    if tok.text == "(":
        p.next()
        ty = _tg_type(p)
        p.expect(")")
        return ty
    if tok.kind == "ident":
        p.next()
        return tt.TgVarT(tok.text)
    raise MuParseError(f"expected a type, found {tok.text!r}", tok.line, tok.col)


def parse_target_type(text: str) -> tt.TargetType:
    p = _Parser(text)
    ty = _tg_type(p)
    p.done()
    return ty


# ---------------------------------------------------------------------------
# Target terms.  Unannotated packs carry ex_ann=None until resolved
# against a typing context (resolve_packs).


def _tg_term(p: _Parser) -> tg.TargetTerm:
    tok = p.peek()
    if tok is None:
        raise p.eof("expected a term")
    if tok.text == "\\":
        p.next()
        x = p.ident()
        p.expect(":")
        ann = _tg_type(p)
        p.expect(".")
        return tg.tg_lam(x, ann, _tg_term(p))
    if tok.text == "let":
        p.next()
        p.expect("<")
        first = p.ident()
        p.expect(",")
        second = p.ident()
        p.expect(">")
        p.expect("=")
        scrut = _tg_term(p)
        p.expect("in")
        body = _tg_term(p)
        if first[:1].isupper():
            return tg.tg_let_pack(first, second, scrut, body)
        return tg.tg_let_pair(first, second, scrut, body)
    return _tg_app(p)


def _tg_app(p: _Parser) -> tg.TargetTerm:
    term = _tg_atom(p)
    while True:
        tok = p.peek()
        if tok is None:
            return term
        if tok.text in ("(", "<", "*") or (
            tok.kind == "ident" and tok.text not in ("in", "let")
        ):
            term = tg.TgApp(term, _tg_atom(p))
            continue
        if tok.text == "\\":
            term = tg.TgApp(term, _tg_term(p))
            continue
        return term


def _tg_atom(p: _Parser) -> tg.TargetTerm:
    tok = p.next()
    if tok.text == "*":
        return tg.STAR
    if tok.text == "(":
        term = _tg_term(p)
        p.expect(")")
        return term
    if tok.text == "<":
        # <M, N>  or  <t | M>  or  <t | M : T>; disambiguate by scanning
        # for the separator at depth zero.
        start = p.pos
        depth = 0
        sep = None
        for k in range(start, len(p.tokens)):
            t = p.tokens[k]
            if t.text in ("(", "<", "["):
                depth += 1
            elif t.text in (")", ">", "]"):
                if t.text == ">" and depth == 0:
                    break
                depth -= 1
            elif depth == 0 and t.text in (",", "|"):
                sep = t.text
                break
        if sep == ",":
            left = _tg_term(p)
            p.expect(",")
            right = _tg_term(p)
            p.expect(">")
            return tg.Pair(left, right)
        if sep == "|":
            witness = _tg_type(p)
            p.expect("|")
            payload = _tg_term(p)
            ex = None
            if p.at(":"):
                p.next()
                ex = _tg_type(p)
            p.expect(">")
            return tg.Pack(witness, payload, ex)  # type: ignore[arg-type]
        raise MuParseError("malformed angle-bracket form", tok.line, tok.col)
    if tok.kind == "ident":
        return tg.TgVar(tok.text)
    raise MuParseError(f"expected a term, found {tok.text!r}", tok.line, tok.col)


def parse_target_term(text: str) -> tg.TargetTerm:
    p = _Parser(text)
    term = _tg_term(p)
    p.done()
    return term


def resolve_packs(term: tg.TargetTerm, context, mode: str = "plain") -> tg.TargetTerm:
    """Fill missing pack annotations: the existential generalises every
    occurrence of the witness in the payload's type (documented default;
    use <t | M : T> when another existential is intended)."""
    from . import target_typing as tgt

    def anti(ty: tt.TargetType, witness: tt.TargetType, depth: int = 0) -> tt.TargetType:
        if ty == witness:
            return tt.TgBoundT(depth)
        match ty:
            case tt.TgVarT(_) | tt.TgBoundT(_) | tt.RType():
                return ty
            case tt.Neg(body):
                return tt.Neg(anti(body, witness, depth))
            case tt.Conj(left, right):
                return tt.Conj(anti(left, witness, depth), anti(right, witness, depth))
            case tt.Exists(hint, body):
                return tt.Exists(hint, anti(body, witness, depth + 1))
        raise TypeError(ty)

    def go(t: tg.TargetTerm, ctx) -> tg.TargetTerm:
        match t:
            case tg.Pack(w, payload, ex):
                payload = go(payload, ctx)
                if ex is None:
                    pty = tgt.typecheck_target(ctx, payload, mode)
                    ex = tt.Exists("X", anti(pty, w))
                return tg.Pack(w, payload, ex)
            case tg.TgVar(_) | tg.TgBVar(_) | tg.Star():
                return t
            case tg.TgLam(hint, ann, body):
                x = tg.fresh(hint or "x")
                inner = go(tg.open_var(body, x), ctx + ((x, ann),))
                return tg.TgLam(hint, ann, tg.close_var(inner, x))
            case tg.TgApp(fn, arg):
                return tg.TgApp(go(fn, ctx), go(arg, ctx))
            case tg.Pair(left, right):
                return tg.Pair(go(left, ctx), go(right, ctx))
            case tg.LetPair(hx, hy, scrut, body):
                scrut = go(scrut, ctx)
                sty = tgt.typecheck_target(ctx, scrut, mode)
                x, y = tg.fresh(hx or "x"), tg.fresh(hy or "y")
                opened = tg.open_var(tg.open_var(body, y), x, 1)
                inner = go(opened, ctx + ((x, sty.left), (y, sty.right)))
                return tg.LetPair(hx, hy, scrut, tg.close_var(tg.close_var(inner, y), x, 1))
            case tg.LetPack(ht, hx, scrut, body):
                scrut = go(scrut, ctx)
                sty = tgt.typecheck_target(ctx, scrut, mode)
                xv, x = tg.fresh(ht or "X"), tg.fresh(hx or "x")
                opened = tg.open_var(tg.open_tvar_term(body, xv), x)
                inner = go(opened, ctx + ((x, tt.inst_tvar(sty.body, tt.TgVarT(xv))),))
                return tg.LetPack(
                    ht, hx, scrut, tg.close_tvar_term(tg.close_var(inner, x), xv)
                )
        raise TypeError(t)

    return go(term, tuple(context))
