"""The decidable fragment: quantifier-free formulas and formulas whose
number quantifiers are all syntactically bounded.

Bounded quantifiers are recognised on the expanded core forms
``forall x (x < t -> A)``, ``forall x (x <= t -> A)``,
``exists x (x < t & A)`` and ``exists x (x <= t & A)`` with ``x`` not free
in ``t``.  Searches that are unbounded in principle take an explicit cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Mapping

from .errors import NoWitnessError, UndecidableFormulaError
from .kernel.codec import encode_seq
from .kernel.constants import BASE_TABLE, ConstantTable
from .kernel.evaluate import EMPTY_ENV, Assignment, Environment, Evaluator
from .syntax.ast import (
    ZERO,
    And,
    ConstApp,
    Eq,
    ExistsNum,
    ForallNum,
    Formula,
    Implies,
    Lambda,
    Not,
    NumVar,
    Or,
    Term,
    app,
    component_term,
    numeral,
    succ,
)
from .syntax.ops import free_var_set, free_vars, fresh_num, substitute_many


class DecidabilityClass(IntEnum):
    QuantifierFree = 0
    BoundedOnly = 1
    Other = 2


@dataclass(frozen=True)
class BoundedQuant:
    """``forall/exists var < bound`` (or ``<=`` when not ``strict``) over ``body``."""

    universal: bool
    var: NumVar
    bound: Term
    strict: bool
    body: Formula


def _lt_bound(f: Formula, x: NumVar) -> Term | None:
    """``t`` if ``f`` is ``x' - t = 0`` with ``x`` not free in ``t``."""
    if (
        isinstance(f, Eq)
        and f.rhs == ZERO
        and isinstance(f.lhs, ConstApp)
        and f.lhs.const == "monus"
        and f.lhs.args[0] == succ(x)
        and x not in free_vars(f.lhs.args[1])[0]
    ):
        return f.lhs.args[1]
    return None


def _guard(f: Formula, x: NumVar) -> tuple[Term, bool] | None:
    t = _lt_bound(f, x)
    if t is not None:
        return t, True
    if isinstance(f, Or):
        t = _lt_bound(f.left, x)
        if t is not None and f.right == Eq(x, t):
            return t, False
    return None


def bounded_parts(f: Formula) -> BoundedQuant | None:
    if isinstance(f, ForallNum) and isinstance(f.body, Implies):
        g = _guard(f.body.left, f.var)
        if g is not None:
            return BoundedQuant(True, f.var, g[0], g[1], f.body.right)
    if isinstance(f, ExistsNum) and isinstance(f.body, And):
        g = _guard(f.body.left, f.var)
        if g is not None:
            return BoundedQuant(False, f.var, g[0], g[1], f.body.right)
    return None


def classify(f: Formula) -> DecidabilityClass:
    if isinstance(f, Eq):
        return DecidabilityClass.QuantifierFree
    if isinstance(f, Not):
        return classify(f.body)
    if isinstance(f, (And, Or, Implies)):
        return max(classify(f.left), classify(f.right))
    bq = bounded_parts(f)
    if bq is None:
        return DecidabilityClass.Other
    inner = classify(bq.body)
    return DecidabilityClass.Other if inner is DecidabilityClass.Other else DecidabilityClass.BoundedOnly


def is_decidable(f: Formula) -> bool:
    return classify(f) is not DecidabilityClass.Other


def _require(f: Formula) -> None:
    if not is_decidable(f):
        raise UndecidableFormulaError(
            "formula is neither quantifier-free nor bounded-only"
        )


def _asg(asg) -> dict:
    if asg is None:
        return {}
    return dict(asg.numvars if isinstance(asg, Assignment) else asg)


class _Truth:
    def __init__(self, ev: Evaluator):
        self.ev = ev

    def __call__(self, f: Formula, asg: dict) -> bool:
        if isinstance(f, Eq):
            return self.ev.term(f.lhs, asg) == self.ev.term(f.rhs, asg)
        if isinstance(f, Not):
            return not self(f.body, asg)
        if isinstance(f, And):
            return self(f.left, asg) and self(f.right, asg)
        if isinstance(f, Or):
            return self(f.left, asg) or self(f.right, asg)
        if isinstance(f, Implies):
            return (not self(f.left, asg)) or self(f.right, asg)
        bq = bounded_parts(f)
        if bq is None:
            raise UndecidableFormulaError("unbounded or function quantifier")
        limit = self.ev.term(bq.bound, asg) + (0 if bq.strict else 1)
        inner = dict(asg)
        test = all if bq.universal else any

        def values():
            for n in range(limit):
                inner[bq.var] = n
                yield self(bq.body, inner)

        return test(values())


def truth(
    f: Formula,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    table: ConstantTable = BASE_TABLE,
) -> bool:
    """Classical truth value of a decidable-class formula."""
    _require(f)
    return _Truth(Evaluator(env, table))(f, _asg(asg))


@dataclass(frozen=True)
class CharTerm:
    source: Formula
    q: Term


def _q(f: Formula) -> Term:
    if isinstance(f, Eq):
        return app("sg", app("absdiff", f.lhs, f.rhs))
    if isinstance(f, Not):
        return app("sgbar", _q(f.body))
    if isinstance(f, And):
        return app("sg", app("add", _q(f.left), _q(f.right)))
    if isinstance(f, Or):
        return app("mul", _q(f.left), _q(f.right))
    if isinstance(f, Implies):
        return app("mul", app("sgbar", _q(f.left)), _q(f.right))
    bq = bounded_parts(f)
    if bq is None:
        raise UndecidableFormulaError("unbounded or function quantifier")
    bound = bq.bound if bq.strict else succ(bq.bound)
    body = Lambda(bq.var, _q(bq.body))
    if bq.universal:
        return app("sg", app("sum", bound, body))
    return app("prod", bound, body)


def char_term(f: Formula) -> CharTerm:
    """A term ``q`` with ``q <= 1`` and ``q = 0`` exactly when ``f`` is true."""
    _require(f)
    return CharTerm(f, _q(f))


def least_witness(
    f: Formula,
    y: NumVar,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    cap: int = 1000,
    table: ConstantTable = BASE_TABLE,
) -> int | None:
    """Smallest ``n <= cap`` making ``f`` true at ``y = n``; ``None`` if none."""
    _require(f)
    tr = _Truth(Evaluator(env, table))
    a = _asg(asg)
    for n in range(cap + 1):
        a[y] = n
        if tr(f, a):
            return n
    return None


def choice_witness(
    f: Formula,
    x: NumVar,
    y: NumVar,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    domain_bound: int = 10,
    cap: int = 1000,
    table: ConstantTable = BASE_TABLE,
) -> list[int]:
    """For each ``m < domain_bound`` the least ``n <= cap`` with ``f(m, n)``."""
    _require(f)
    tr = _Truth(Evaluator(env, table))
    a = _asg(asg)
    out = []
    for m in range(domain_bound):
        a[x] = m
        for n in range(cap + 1):
            a[y] = n
            if tr(f, a):
                out.append(n)
                break
        else:
            raise NoWitnessError(f"no witness <= {cap} for {x} = {m}")
    return out


def cfd_witness(
    f: Formula,
    x: NumVar,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    domain_bound: int = 10,
    table: ConstantTable = BASE_TABLE,
) -> list[int]:
    """Characteristic table: 0 where ``f`` holds at ``x = m``, 1 elsewhere."""
    _require(f)
    tr = _Truth(Evaluator(env, table))
    a = _asg(asg)
    out = []
    for m in range(domain_bound):
        a[x] = m
        out.append(0 if tr(f, a) else 1)
    return out


def paired_char_term(f: Formula, x: NumVar, y: NumVar, w: NumVar) -> Term:
    """``q[x := (w)_0, y := (w)_1]``: the characteristic function of ``f``
    read on pair codes ``<x, y>``."""
    q = char_term(f).q
    return substitute_many(q, {x: component_term(w, 0), y: component_term(w, 1)})


def pairing_witness_holds(
    f: Formula,
    x: NumVar,
    y: NumVar,
    table_values: list[int],
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    table: ConstantTable = BASE_TABLE,
) -> bool:
    """Does the paired characteristic term vanish at ``<m, table_values[m]>``?"""
    _require(f)
    w = fresh_num("w", free_var_set(f) | {x, y})
    beta = paired_char_term(f, x, y, w)
    ev = Evaluator(env, table)
    a = _asg(asg)
    for m, n in enumerate(table_values):
        a[w] = encode_seq((m, n))
        if ev.term(beta, a) != 0:
            return False
    return True


def expand(
    f: Formula,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    table: ConstantTable = BASE_TABLE,
) -> Formula:
    """Unfold every bounded quantifier into a finite conjunction or
    disjunction of numeral instances.  Free variables are first replaced by
    the numerals of their assigned values."""
    _require(f)
    ev = Evaluator(env, table)
    a = _asg(asg)
    closed = substitute_many(f, {v: numeral(n) for v, n in a.items() if v in free_vars(f)[0]})
    return _expand(closed, ev)


_TRUE = Eq(ZERO, ZERO)
_FALSE = Eq(ZERO, numeral(1))


def _expand(f: Formula, ev: Evaluator) -> Formula:
    if isinstance(f, Eq):
        return f
    if isinstance(f, Not):
        return Not(_expand(f.body, ev))
    if isinstance(f, (And, Or, Implies)):
        return type(f)(_expand(f.left, ev), _expand(f.right, ev))
    bq = bounded_parts(f)
    limit = ev.term(bq.bound, {}) + (0 if bq.strict else 1)
    parts = [
        _expand(substitute_many(bq.body, {bq.var: numeral(n)}), ev) for n in range(limit)
    ]
    if not parts:
        return _TRUE if bq.universal else _FALSE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p) if bq.universal else Or(out, p)
    return out


__all__ = [
    "BoundedQuant",
    "CharTerm",
    "DecidabilityClass",
    "bounded_parts",
    "cfd_witness",
    "char_term",
    "choice_witness",
    "classify",
    "expand",
    "is_decidable",
    "least_witness",
    "paired_char_term",
    "pairing_witness_holds",
    "truth",
]
