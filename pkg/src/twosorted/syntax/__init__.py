"""Two-sorted syntax: AST, traversal, substitution, text and JSON forms."""

from .ast import (
    DEFAULT_FUNVAR_NAMES,
    ZERO,
    And,
    Apply,
    ConstApp,
    Eq,
    ExistsFun,
    ExistsNum,
    Expr,
    ForallFun,
    ForallNum,
    Formula,
    Functor,
    FunVar,
    Implies,
    Lambda,
    Not,
    NumVar,
    Or,
    RecApp,
    Term,
    UnaryConst,
    app,
    component_term,
    divides,
    iff,
    le,
    lt,
    numeral,
    numeral_value,
    seq_code_term,
    succ,
)
from .ops import (
    all_vars,
    canonical_key,
    congruent,
    free_vars,
    fresh_fun,
    fresh_num,
    has_lambda,
    has_rec,
    is_free_for,
    substitute,
    substitute_many,
    superscript_w,
    var_ordering,
)
from .parser import exists_unique, functor_equality, parse, parse_formula, parse_functor, parse_term
from .printer import to_text
from .serialize import dumps, from_json, loads, to_json
from .signature import BASE_SIGNATURE, F_TABLE, ConstSig

__all__ = [name for name in dir() if not name.startswith("_")]
