"""Recursor elimination and lambda elimination.

Both translations act on prime formulas and commute with every connective
and quantifier.  Fresh bound variables are picked from the prime formula's
own variables only, so translating a composite formula equals composing
the translations of its prime parts.

The checkers compare truth of a formula with truth of its translation,
instantiating each introduced function variable by its canonical witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

from .decidable import bounded_parts, is_decidable, truth
from .errors import UndecidableFormulaError
from .kernel import codec
from .kernel.constants import BASE_TABLE, ConstantTable
from .kernel.evaluate import EMPTY_ENV, Assignment, Environment, Evaluator
from .syntax.ast import (
    BINARY,
    FUN_QUANTS,
    NUM_QUANTS,
    ZERO,
    And,
    Apply,
    Eq,
    ExistsFun,
    Formula,
    ForallNum,
    Functor,
    FunVar,
    Lambda,
    Not,
    NumVar,
    RecApp,
    Term,
    numeral,
    seq_code_term,
    succ,
)
from .syntax.ops import (
    Path,
    all_vars,
    free_vars,
    fresh_fun,
    fresh_num,
    has_lambda,
    has_rec,
    replace_at,
    subexpressions,
    substitute_many,
    superscript_w,
    var_ordering,
)


# -- the formula A(x, alpha, y, w) -------------------------------------------

def a_formula(t: Term, u: Functor, s: Term, v: Term, beta: FunVar, z: NumVar) -> Formula:
    """``exists beta [beta(0) = t & forall z beta(z') = u(<beta(z), z>) & beta(s) = v]``."""
    step = Eq(Apply(beta, succ(z)), Apply(u, seq_code_term((Apply(beta, z), z))))
    return ExistsFun(
        beta,
        And(And(Eq(Apply(beta, ZERO), t), ForallNum(z, step)), Eq(Apply(beta, s), v)),
    )


@dataclass(frozen=True)
class AParts:
    t: Term
    u: Functor
    s: Term
    v: Term
    beta: FunVar
    z: NumVar


def match_a_formula(f: Formula) -> AParts | None:
    """Inverse of :func:`a_formula`, up to the choice of ``beta`` and ``z``."""
    if not (isinstance(f, ExistsFun) and isinstance(f.body, And) and isinstance(f.body.left, And)):
        return None
    beta = f.var
    first, loop, last = f.body.left.left, f.body.left.right, f.body.right
    if not (isinstance(first, Eq) and first.lhs == Apply(beta, ZERO)):
        return None
    if not (isinstance(last, Eq) and isinstance(last.lhs, Apply) and last.lhs.functor == beta):
        return None
    if not (isinstance(loop, ForallNum) and isinstance(loop.body, Eq)):
        return None
    z = loop.var
    lhs, rhs = loop.body.lhs, loop.body.rhs
    if lhs != Apply(beta, succ(z)) or not isinstance(rhs, Apply):
        return None
    if rhs.arg != seq_code_term((Apply(beta, z), z)):
        return None
    parts = AParts(first.rhs, rhs.functor, last.lhs.arg, last.rhs, beta, z)
    if a_formula(parts.t, parts.u, parts.s, parts.v, beta, z) != f:
        return None
    # beta and z must not occur in the pieces they do not bind.
    for piece in (parts.t, parts.u, parts.s, parts.v):
        if beta in all_vars(piece):
            return None
    return parts


# -- structural lifting ------------------------------------------------------

def _lift(f: Formula, prime: Callable[[Eq], Formula]) -> Formula:
    if isinstance(f, Eq):
        return prime(f)
    if isinstance(f, Not):
        return Not(_lift(f.body, prime))
    if isinstance(f, BINARY):
        return type(f)(_lift(f.left, prime), _lift(f.right, prime))
    if isinstance(f, NUM_QUANTS + FUN_QUANTS):
        return type(f)(f.var, _lift(f.body, prime))
    raise TypeError(f"not a formula: {f!r}")


# -- recursor elimination ----------------------------------------------------

@dataclass(frozen=True)
class RecOccurrence:
    path: Path
    term: RecApp
    ordering: tuple[NumVar, ...]


def find_rec_plain(e) -> RecOccurrence | None:
    """The leftmost ``rec(t, u, s)`` with no ``rec`` inside ``t``, ``u``, ``s``."""
    for path, node in subexpressions(e):
        if isinstance(node, RecApp) and not any(
            has_rec(k) for k in (node.base, node.step, node.arg)
        ):
            return RecOccurrence(path, node, tuple(var_ordering(node)))
    return None


@dataclass(frozen=True)
class _RecStep:
    occ: RecOccurrence
    gamma: FunVar
    w: NumVar
    beta: FunVar
    z: NumVar
    pieces: tuple[Term, Functor, Term]
    rest: Eq


def _rec_step(e: Eq) -> _RecStep | None:
    occ = find_rec_plain(e)
    if occ is None:
        return None
    used = all_vars(e)
    gamma = fresh_fun("gamma", used)
    beta = fresh_fun("beta", used | {gamma})
    w = fresh_num("w", used)
    z = fresh_num("z", used | {w})
    order = list(occ.ordering)
    r = occ.term
    pieces = (
        superscript_w(r.base, w, order),
        superscript_w(r.step, w, order),
        superscript_w(r.arg, w, order),
    )
    rest = replace_at(e, occ.path, Apply(gamma, seq_code_term(occ.ordering)))
    return _RecStep(occ, gamma, w, beta, z, pieces, rest)


def rec_eliminate_prime(e: Eq) -> Formula:
    step = _rec_step(e)
    if step is None:
        return e
    t, u, s = step.pieces
    a = a_formula(t, u, s, Apply(step.gamma, step.w), step.beta, step.z)
    return ExistsFun(step.gamma, And(ForallNum(step.w, a), rec_eliminate_prime(step.rest)))


def rec_eliminate(f: Formula) -> Formula:
    """The rec-less transform: every rec-term is replaced by a function
    variable pinned down by the formula ``A``."""
    return _lift(f, rec_eliminate_prime)


# -- lambda elimination ------------------------------------------------------

def find_outer_lambda(e) -> tuple[Path, Lambda] | None:
    """The leftmost lambda not inside another lambda."""
    for path, node in subexpressions(e):
        if isinstance(node, Lambda):
            return path, node
    return None


def _lambda_step(p: Eq):
    found = find_outer_lambda(p)
    if found is None:
        return None
    path, lam = found
    alpha = fresh_fun("alpha", all_vars(p))
    defining = Eq(lam.body, Apply(alpha, lam.var))
    rest = replace_at(p, path, alpha)
    return alpha, lam, defining, rest


def lambda_eliminate_prime(p: Eq) -> Formula:
    step = _lambda_step(p)
    if step is None:
        return p
    alpha, lam, defining, rest = step
    return ExistsFun(
        alpha,
        And(ForallNum(lam.var, lambda_eliminate_prime(defining)), lambda_eliminate_prime(rest)),
    )


def lambda_eliminate(f: Formula) -> Formula:
    """Replace each lambda-abstract by a function variable that agrees with it."""
    return _lift(f, lambda_eliminate_prime)


# -- semantic checks ---------------------------------------------------------

class _Mismatch(Exception):
    pass


def _closed(u, env: Environment, asg: Mapping[NumVar, int]):
    fv_nums, fv_funs = free_vars(u)
    m = {v: env.lookup(v) for v in fv_funs}
    m.update({v: numeral(asg[v]) for v in fv_nums if v in asg})
    return substitute_many(u, m) if m else u


def _asg(asg) -> dict:
    if asg is None:
        return {}
    return dict(asg.numvars if isinstance(asg, Assignment) else asg)


class _PairedTruth:
    """Truth of a translation, walked in parallel with its source.

    Bounded-quantifier ranges come from the source, so the translation of
    a guard is itself evaluated (and thereby tested) inside the range.
    """

    def __init__(self, prime_truth, table: ConstantTable):
        self.prime_truth = prime_truth
        self.table = table

    def __call__(self, f: Formula, g: Formula, env: Environment, asg: dict) -> bool:
        if isinstance(f, Eq):
            return self.prime_truth(f, g, env, asg)
        if isinstance(f, Not):
            return not self(f.body, g.body, env, asg)
        if isinstance(f, BINARY):
            left = self(f.left, g.left, env, asg)
            name = type(f).__name__
            if name == "And":
                return left and self(f.right, g.right, env, asg)
            if name == "Or":
                return left or self(f.right, g.right, env, asg)
            return (not left) or self(f.right, g.right, env, asg)
        bq = bounded_parts(f)
        if bq is None:
            raise UndecidableFormulaError("unbounded or function quantifier")
        limit = Evaluator(env, self.table).term(bq.bound, asg) + (0 if bq.strict else 1)
        results = []
        for n in range(limit):
            inner = dict(asg)
            inner[bq.var] = n
            # translated guard, then translated body
            guard = self(f.body.left, g.body.left, env, inner)
            if not guard:
                raise _Mismatch(f"translated guard false inside range at {bq.var} = {n}")
            results.append(self(f.body.right, g.body.right, env, inner))
        return all(results) if bq.universal else any(results)


def _check(f: Formula, g: Formula, prime_truth, env, asg, table) -> bool:
    if not is_decidable(f):
        raise UndecidableFormulaError("equivalence check needs a decidable-class formula")
    a = _asg(asg)
    expected = truth(f, env, a, table)
    try:
        got = _PairedTruth(prime_truth, table)(f, g, env, a)
    except _Mismatch:
        return False
    return got == expected


def check_rec_equiv(
    f: Formula,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    w_bound: int = 64,
    table: ConstantTable = BASE_TABLE,
) -> bool:
    """Does ``f`` agree with its rec-less transform under the canonical
    witnesses ``gamma* = lam w. rec(t^w, u^w, s^w)``, with the ``A``-clause
    verified for every ``w < w_bound``?"""

    def prime_truth(e: Eq, g: Formula, env: Environment, asg: dict) -> bool:
        step = _rec_step(e)
        if step is None:
            if g != e:
                raise _Mismatch("rec-free prime formula was changed")
            return Evaluator(env, table).holds(e, asg)
        t, u, s = step.pieces
        witness = _closed(Lambda(step.w, RecApp(t, u, s)), env, {})
        env2 = env.bind(step.gamma, witness)
        if not (isinstance(g, ExistsFun) and g.var == step.gamma and isinstance(g.body, And)):
            raise _Mismatch("unexpected shape of the transform")
        loop, rest = g.body.left, g.body.right
        parts = match_a_formula(loop.body) if isinstance(loop, ForallNum) else None
        if parts is None:
            raise _Mismatch("A-formula not recognised")
        ev = Evaluator(env2, table)
        for n in range(w_bound):
            val = {loop.var: n}
            x, y = ev.term(parts.t, val), ev.term(parts.s, val)
            betas = codec.iterate(x, ev.functor(parts.u, val), y)
            if betas[-1] != ev.term(parts.v, val):
                raise _Mismatch(f"A fails at w = {n}")
            if max(betas) <= 64:
                alpha = ev.functor(parts.u, val)
                v = codec.course_of_values(x, alpha, y)
                if not codec.is_course_of_values(x, alpha, y, v):
                    raise _Mismatch(f"course-of-values code fails at w = {n}")
        return prime_truth(step.rest, rest, env2, asg)

    return _check(f, rec_eliminate(f), prime_truth, env, asg, table)


def check_lambda_equiv(
    f: Formula,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    x_bound: int = 8,
    table: ConstantTable = BASE_TABLE,
) -> bool:
    """Does ``f`` agree with its lambda-free transform when each introduced
    ``alpha`` is the eliminated lambda itself, with the agreement clause
    verified for ``x < x_bound``?"""

    def prime_truth(p: Eq, g: Formula, env: Environment, asg: dict) -> bool:
        step = _lambda_step(p)
        if step is None:
            if g != p:
                raise _Mismatch("lambda-free prime formula was changed")
            return Evaluator(env, table).holds(p, asg)
        alpha, lam, defining, rest = step
        if not (isinstance(g, ExistsFun) and g.var == alpha and isinstance(g.body, And)):
            raise _Mismatch("unexpected shape of the transform")
        loop, rest_t = g.body.left, g.body.right
        if not (isinstance(loop, ForallNum) and loop.var == lam.var):
            raise _Mismatch("agreement clause not recognised")
        env2 = env.bind(alpha, _closed(lam, env, asg))
        for n in range(x_bound):
            inner = dict(asg)
            inner[lam.var] = n
            if not prime_truth(defining, loop.body, env2, inner):
                raise _Mismatch(f"agreement clause fails at {lam.var} = {n}")
        return prime_truth(rest, rest_t, env2, asg)

    return _check(f, lambda_eliminate(f), prime_truth, env, asg, table)


__all__ = [
    "AParts",
    "RecOccurrence",
    "a_formula",
    "check_lambda_equiv",
    "check_rec_equiv",
    "find_outer_lambda",
    "find_rec_plain",
    "lambda_eliminate",
    "lambda_eliminate_prime",
    "match_a_formula",
    "rec_eliminate",
    "rec_eliminate_prime",
]
