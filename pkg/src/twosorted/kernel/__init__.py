"""Evaluation of terms, functors and quantifier-free formulas, plus the
sequence codec and the defining-axiom checker."""

from .axioms import (
    DEFINING_AXIOMS,
    FUNCTOR_POOL,
    PRIME_TEXT,
    MuClause,
    check_defining_axiom,
    mu_term,
    prime_formula,
    sweep,
)
from .codec import (
    bar_code,
    component,
    concat,
    course_of_values,
    decode_seq,
    encode_seq,
    is_course_of_values,
    iterate,
    join,
    nth_prime,
    seq_len,
    tilde_code,
)
from .constants import BASE_TABLE, ConstantDef, ConstantTable, cantor_pair, cantor_unpair
from .evaluate import (
    EMPTY_ASG,
    EMPTY_ENV,
    Assignment,
    Environment,
    Evaluator,
    bindings_from_json,
    bindings_to_json,
    eval_functor,
    eval_term,
    holds_qf,
)

__all__ = [name for name in dir() if not name.startswith("_")]
