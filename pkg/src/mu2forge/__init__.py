"""mu2forge: a verifiable kernel for the second-order lambda-mu calculus
and its call-by-name CPS reading in the {exists, and, not}-fragment.

Library surface: typing and substitution for both calculi, the forward
and inverse translations, a normalization-based equality oracle for the
plain and parametric target theories, focality certificates, and
relational free-theorem emission.
"""

from .mu_types import BOT, Arrow, Forall, MuType, TVar, forall, neg
from .mu_terms import (
    App,
    AppArg,
    Lam,
    Mu,
    MuTerm,
    Rename,
    TyApp,
    TyArg,
    TyLam,
    Var,
    bold_mu,
    lam,
    mixed_subst,
    mu,
    named,
    rename_name,
    subst_term,
    subst_type,
    tylam,
)
from .mu_typing import MuJudgement, ctx, judge, typecheck_mu
from .target_typing import PARAMETRIC, PLAIN, typecheck_target
from .canonical import CanonicalForm, EqVerdict, canonicalize, eq_target
from .rewrite import beta_normalize, normalize, replay
from .cps import (
    check_subst_term_in_term,
    check_subst_type_in_term,
    check_subst_type_in_type,
    check_type_soundness,
    cps_term,
    cps_term_typed,
    cps_type,
)
from .inverse import invert, roundtrip
from .theory import (
    BETA_ETA,
    LAMBDA_MU_2P,
    check_additional_axioms,
    eq_mu,
    gen_typed_term,
)
from .combinators import TypeScheme, catalog, church, functorial_action, mk_combinator
from .focality import (
    FocalityCertificate,
    NoCertificate,
    check_discardable,
    check_focal,
    check_naturality_square,
    check_repeatable,
)
from .relations import (
    RelFormula,
    free_theorem,
    instantiate_graph,
    mu_relation,
    open_obligations,
    print_formula,
    target_relation,
)
from .surface import parse_mu_term, parse_mu_type, parse_target_term, parse_target_type

__version__ = "0.1.0"
