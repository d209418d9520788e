import pytest

from mu2forge import mu_terms as tm
from mu2forge import mu_types as mt
from mu2forge import target_terms as tg
from mu2forge import target_types as tt
from mu2forge.combinators import dne, exotic_numeral, l_mu, peirce
from mu2forge.cps import cps_term_typed
from mu2forge.printer import (
    mu_term_from_sexpr,
    mu_type_from_sexpr,
    parse_sexpr,
    print_mu_term,
    print_mu_type,
    print_target_term,
    sexpr_mu_term,
    sexpr_mu_type,
    sexpr_target_term,
    target_term_from_sexpr,
)
from mu2forge.surface import (
    MuParseError,
    parse_mu_term,
    parse_mu_type,
    parse_target_term,
    parse_target_type,
    resolve_packs,
)
from mu2forge.theory import GaveUp, gen_judgement

A = mt.TVar("a")


def test_ascii_spellings():
    assert parse_mu_term(r"\x:s. x") == tm.lam("x", mt.TVar("s"), tm.Var("x"))
    assert parse_mu_term("mu a:s. [b] m") == tm.mu("a", mt.TVar("s"), "b", tm.Var("m"))
    assert parse_mu_term(r"/\X. \x:X. x") == tm.tylam(
        "X", tm.lam("x", mt.TVar("X"), tm.Var("x"))
    )
    assert parse_mu_term("mu* a:s. m") == tm.bold_mu("a", mt.TVar("s"), tm.Var("m"))
    assert parse_mu_term("[b] m") == tm.named("b", tm.Var("m"))
    assert parse_mu_term("m [t]") == tm.TyApp(tm.Var("m"), mt.TVar("t"))
    assert parse_mu_type("bot") == mt.BOT
    assert parse_mu_type("not s") == mt.neg(mt.TVar("s"))
    got = parse_mu_type("forall X. (s -> X) -> X")
    from mu2forge.combinators import l_type

    assert got == l_type(mt.TVar("s"))


def test_positioned_errors():
    with pytest.raises(MuParseError) as err:
        parse_mu_term(r"\x:s.")
    assert err.value.line == 1
    with pytest.raises(MuParseError):
        parse_mu_term("mu a. m")
    with pytest.raises(MuParseError):
        parse_mu_type("forall . X")
    with pytest.raises(MuParseError):
        parse_target_term("let <x y> = z in x")


def test_print_parse_roundtrip_corpus():
    for term in [dne(A), peirce(A, mt.TVar("b")), exotic_numeral(), l_mu(A)]:
        assert parse_mu_term(print_mu_term(term)) == term


def test_print_parse_roundtrip_generated():
    """parse(print(t)) = t over seeded generated terms in both calculi."""
    checked = 0
    seed = 91000
    while checked < 1000:
        try:
            gamma, delta, term, _ = gen_judgement(seed, budget=5)
        except GaveUp:
            seed += 1
            continue
        assert parse_mu_term(print_mu_term(term)) == term, seed
        image, _ = cps_term_typed(gamma, delta, term)
        assert parse_target_term(print_target_term(image)) == image, seed
        checked += 1
        seed += 1


def test_type_print_parse_roundtrip_generated():
    import random

    from mu2forge.theory import gen_type

    rng = random.Random(17)
    for _ in range(1000):
        ty = gen_type(rng, 3)
        assert parse_mu_type(print_mu_type(ty)) == ty


def test_target_surface():
    assert parse_target_term("*") == tg.STAR
    assert parse_target_type("R") == tt.R
    assert parse_target_type("not s /\\ s") == tt.Conj(
        tt.Neg(tt.TgVarT("s")), tt.TgVarT("s")
    )
    t = parse_target_term("let <x, k> = z in x k")
    assert isinstance(t, tg.LetPair)
    t = parse_target_term("let <X, k> = z in k k")
    assert isinstance(t, tg.LetPack)
    packed = parse_target_term("<s | k : exists X. X>")
    assert packed == tg.Pack(tt.TgVarT("s"), tg.TgVar("k"), tt.TOP)


def test_resolve_packs_default_annotation():
    packed = parse_target_term("<s | k>")
    resolved = resolve_packs(packed, (("k", tt.TgVarT("s")),))
    assert resolved == tg.Pack(tt.TgVarT("s"), tg.TgVar("k"), tt.TOP)


def test_sexpr_roundtrips():
    for term in [dne(A), exotic_numeral(), l_mu(A)]:
        assert mu_term_from_sexpr(parse_sexpr(sexpr_mu_term(term))) == term
    ty = mt.forall("X", mt.Arrow(mt.TVar("X"), A))
    assert mu_type_from_sexpr(parse_sexpr(sexpr_mu_type(ty))) == ty
    image, _ = cps_term_typed((), (), dne(A))
    assert target_term_from_sexpr(parse_sexpr(sexpr_target_term(image))) == image


def test_unicode_output_is_reparseable():
    term = parse_mu_term("mu* a:not not s. [b] (m [bot])")
    assert parse_mu_term(print_mu_term(term)) == term
