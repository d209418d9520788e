import pytest

from mu2forge import mu_terms as tm
from mu2forge import mu_types as mt
from mu2forge.mu_typing import TypeMismatch, ctx, typecheck_mu
from mu2forge.theory import (
    BETA_ETA,
    LAMBDA_MU_2P,
    GaveUp,
    additional_axiom_instances,
    check_additional_axioms,
    check_schema,
    core_axiom_instances,
    eq_mu,
    gen_judgement,
    gen_typed_term,
)

A, B = mt.TVar("a"), mt.TVar("b")


def test_core_schemas_equal_under_beta_eta():
    for inst in core_axiom_instances():
        verdict = check_schema(inst, BETA_ETA)
        assert verdict.equal, inst.name


def test_mu_eta_example():
    m = tm.Var("m")
    assert eq_mu(tm.mu("a", A, "a", m), m, BETA_ETA, ctx(("m", A))).equal


def test_additional_axioms_split_theories():
    for report in check_additional_axioms():
        assert report.parametric_equal, (report.presentation, report.instance)
        assert not report.plain_equal, (report.presentation, report.instance)


def test_presentations_cover_three_each():
    instances = additional_axiom_instances()
    assert set(instances) == {"discard", "falsity", "structural"}
    assert all(len(v) == 3 for v in instances.values())


def test_renaming_axiom_only_in_parametric_theory():
    # [a'](mu* a:s. M) = M[a'/a] needs the additional axioms
    p = tm.Var("p")
    used = tm.App(p, tm.named("a0", tm.Var("q")))
    lhs = tm.named("d", tm.bold_mu("a0", A, used))
    rhs = tm.App(p, tm.named("d", tm.Var("q")))
    g = ctx(("p", mt.Arrow(mt.BOT, mt.BOT)), ("q", A))
    d = ctx(("d", A))
    assert eq_mu(lhs, rhs, LAMBDA_MU_2P, g, d).equal
    assert not eq_mu(lhs, rhs, BETA_ETA, g, d).equal


def test_eq_mu_type_mismatch():
    with pytest.raises(TypeMismatch):
        eq_mu(tm.Var("x"), tm.Var("y"), BETA_ETA, ctx(("x", A), ("y", B)))


def test_generator_deterministic():
    t1 = gen_typed_term(42, 5, ctx(("v", A)), ctx(), mt.Arrow(A, A))
    t2 = gen_typed_term(42, 5, ctx(("v", A)), ctx(), mt.Arrow(A, A))
    assert t1 == t2


def test_generator_wellTyped_and_goal_directed():
    goal = mt.Arrow(A, A)
    term = gen_typed_term(7, 3, ctx(), ctx(), goal)
    assert typecheck_mu(ctx(), ctx(), term) == goal
    # bot -> s is inhabited within a small budget (via abort-style terms)
    goal = mt.Arrow(mt.BOT, A)
    found = None
    for seed in range(50):
        try:
            found = gen_typed_term(seed, 4, ctx(), ctx(), goal)
            break
        except GaveUp:
            continue
    assert found is not None
    assert typecheck_mu(ctx(), ctx(), found) == goal


def test_generator_covers_all_formers():
    seen = set()
    for seed in range(250):
        try:
            _, _, term, _ = gen_judgement(seed, budget=6)
        except GaveUp:
            continue
        stack = [term]
        while stack:
            node = stack.pop()
            seen.add(type(node).__name__)
            match node:
                case tm.Lam(_, _, body) | tm.TyLam(_, body) | tm.Mu(_, _, _, body):
                    stack.append(body)
                case tm.App(fn, arg):
                    stack.extend((fn, arg))
                case tm.TyApp(fn, _):
                    stack.append(fn)
    assert {"Var", "Lam", "App", "TyLam", "TyApp", "Mu"} <= seen


def test_gave_up():
    with pytest.raises(GaveUp):
        gen_typed_term(0, 1, ctx(), ctx(), mt.TVar("zq"))


def test_beta_substitution_coherence_on_generated_terms():
    """(lam x. M) N equals M[N/x] for generated M and N: the oracle's
    beta agrees with the kernel's substitution through arbitrary
    structure."""
    import random

    from mu2forge.theory import gen_type

    checked = 0
    seed = 310_000
    while checked < 40:
        rng = random.Random(seed)
        sigma_x = gen_type(rng, 2)
        gamma = ctx(("v1", gen_type(rng, 2)), ("v2", sigma_x))
        delta = ctx(("k1", gen_type(rng, 2)))
        try:
            m = gen_typed_term(seed, 5, gamma + (("x", sigma_x),), delta, gen_type(rng, 2))
            n = gen_typed_term(seed + 1, 4, gamma, delta, sigma_x)
        except GaveUp:
            seed += 1
            continue
        redex = tm.App(tm.lam("x", sigma_x, m), n)
        contractum = tm.subst_term(m, "x", n)
        assert eq_mu(redex, contractum, BETA_ETA, gamma, delta).equal, seed
        checked += 1
        seed += 1


def test_structural_mu_axiom_on_generated_bodies():
    """(mu a:s1->s2. [d] L) n  =  mu b. ([d] L)[[b](- n)/[a](-)]  with L
    generated, exercising the mixed substitution through arbitrary
    structure."""
    import random

    from mu2forge.theory import gen_type

    checked = 0
    seed = 470_000
    while checked < 30:
        rng = random.Random(seed)
        s1, s2 = gen_type(rng, 1), gen_type(rng, 1)
        arr = mt.Arrow(s1, s2)
        td = gen_type(rng, 1)
        gamma = ctx(("v1", arr), ("n", s1))
        delta = ctx(("d", td),)
        try:
            body = gen_typed_term(seed, 5, gamma, (("a", arr),) + delta, td)
        except GaveUp:
            seed += 1
            continue
        lhs = tm.App(tm.mu("a", arr, "d", body), tm.Var("n"))
        tgt, rewritten = tm.mixed_subst_naming(
            tm.FName("d"), body, "a", tm.AppArg(tm.Var("n")), b="b"
        )
        assert isinstance(tgt, tm.FName)
        rhs = tm.mu("b", s2, tgt.name, rewritten)
        assert eq_mu(lhs, rhs, BETA_ETA, gamma, delta).equal, seed
        checked += 1
        seed += 1


def test_eta_wrappers_equal_on_generated_terms():
    """Fuzz the oracle: a generated term equals its eta-expansions and its
    trivial mu-wrapping under the plain theory."""
    checked = 0
    seed = 260_000
    while checked < 40:
        try:
            gamma, delta, term, ty = gen_judgement(seed, budget=5)
        except GaveUp:
            seed += 1
            continue
        wrapped = tm.mu("w", ty, "w", term)
        assert eq_mu(term, wrapped, BETA_ETA, gamma, delta).equal, seed
        # a plain-theory Equal stays Equal in the parametric theory
        assert eq_mu(term, wrapped, LAMBDA_MU_2P, gamma, delta).equal, seed
        if isinstance(ty, mt.Arrow):
            expanded = tm.lam("e", ty.dom, tm.App(term, tm.Var("e")))
            assert eq_mu(term, expanded, BETA_ETA, gamma, delta).equal, seed
        if isinstance(ty, mt.Forall):
            expanded = tm.tylam("E", tm.TyApp(term, mt.TVar("E")))
            assert eq_mu(term, expanded, BETA_ETA, gamma, delta).equal, seed
        checked += 1
        seed += 1
