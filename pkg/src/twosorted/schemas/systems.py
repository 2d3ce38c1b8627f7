"""Descriptors of the named formal systems and definitional extension.

A descriptor records which constants a system has, which formation
features it licenses (lambda, rec, function variables, pairing) and which
schemata it assumes.  Extending a descriptor by a primitive recursive
constant returns a new descriptor together with the rule that expands the
constant into a rec-term of the base language.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources

from ..errors import InputError, LanguageError
from ..kernel.constants import BASE_TABLE, ConstantTable
from ..kernel.evaluate import Evaluator
from ..syntax.ast import (
    DEFAULT_FUNVAR_NAMES,
    KEYWORDS,
    Apply,
    ConstApp,
    Expr,
    FunVar,
    Lambda,
    NumVar,
    RecApp,
    Term,
    UnaryConst,
    component_term,
)
from ..syntax.ops import all_vars, children, free_vars, fresh_num, rebuild, subexpressions, substitute_many
from ..syntax.ast import FUN_QUANTS
from ..syntax.signature import BASE_SIGNATURE, ConstSig
from .schemata import SchemaId


@dataclass(frozen=True)
class Features:
    has_lambda: bool
    has_rec: bool
    has_function_vars: bool
    pairing: str = "none"  # none | JKL | j


@dataclass(frozen=True)
class DefinitionRule:
    """``name(x, y) = rec(g, lam z. h[prev := (z)_0, step := (z)_1], y)``."""

    name: str
    x: NumVar
    g: Term
    prev: NumVar
    step: NumVar
    h: Term

    @property
    def sig(self) -> ConstSig:
        return ConstSig(self.name, 2, 0)

    def expand(self, s: Term, t: Term) -> Term:
        """The rec-term standing for ``name(s, t)``."""
        avoid = all_vars(self.h) | free_vars(s)[0] | {self.x, self.prev, self.step}
        z = fresh_num("z", avoid)
        body = substitute_many(
            self.h, {self.prev: component_term(z, 0), self.step: component_term(z, 1), self.x: s}
        )
        return RecApp(substitute_many(self.g, {self.x: s}), Lambda(z, body), t)


@dataclass(frozen=True)
class SystemDescriptor:
    name: str
    constants: frozenset[str]
    features: Features
    schemata: frozenset[SchemaId]
    open_registry: bool = False
    equality: str = ""
    notes: str = ""
    extensions: tuple[DefinitionRule, ...] = ()
    base: str | None = None

    def signature(self) -> dict[str, ConstSig]:
        sig = {n: BASE_SIGNATURE[n] for n in self.constants if n in BASE_SIGNATURE}
        sig.update({r.name: r.sig for r in self.extensions})
        return sig

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "constants": sorted(self.constants),
            "open_registry": self.open_registry,
            "features": {
                "has_lambda": self.features.has_lambda,
                "has_rec": self.features.has_rec,
                "has_function_vars": self.features.has_function_vars,
                "pairing": self.features.pairing,
            },
            "schemata": sorted(s.value for s in self.schemata),
            "equality": self.equality,
            "notes": self.notes,
            "extensions": [r.name for r in self.extensions],
        }


def _from_json(d: dict) -> SystemDescriptor:
    return SystemDescriptor(
        name=d["name"],
        constants=frozenset(d["constants"]),
        features=Features(**d["features"]),
        schemata=frozenset(SchemaId(s) for s in d["schemata"]),
        open_registry=d.get("open_registry", False),
        equality=d.get("equality", ""),
        notes=d.get("notes", ""),
    )


@lru_cache(maxsize=1)
def builtin_systems() -> dict[str, SystemDescriptor]:
    text = resources.files(__package__).joinpath("systems.json").read_text()
    return {d["name"]: _from_json(d) for d in json.loads(text)["systems"]}


def get_system(name: str) -> SystemDescriptor:
    try:
        return builtin_systems()[name]
    except KeyError:
        known = ", ".join(builtin_systems())
        raise InputError(f"unknown system {name!r} (known: {known})") from None


# -- language membership -----------------------------------------------------

def language_violations(e: Expr, sys: SystemDescriptor) -> list[str]:
    """Reasons why ``e`` is not in the language of ``sys`` (empty if it is)."""
    f = sys.features
    allowed = sys.constants | {r.name for r in sys.extensions}
    out: list[str] = []
    for _, n in subexpressions(e):
        if isinstance(n, (ConstApp, UnaryConst)) and n.const not in allowed:
            out.append(f"constant {n.const} is not in {sys.name}")
        if isinstance(n, Lambda) and not f.has_lambda:
            out.append(f"{sys.name} has no lambda-abstraction")
        if isinstance(n, RecApp) and not f.has_rec:
            out.append(f"{sys.name} has no recursor")
        if not f.has_function_vars and (
            isinstance(n, (FunVar, Apply, UnaryConst, Lambda) + FUN_QUANTS)
            or (isinstance(n, ConstApp) and n.funargs)
        ):
            out.append(f"{sys.name} has no function sort")
    return sorted(set(out))


def formula_in_language(e: Expr, sys: SystemDescriptor) -> bool:
    return not language_violations(e, sys)


def language_subset(small: SystemDescriptor, big: SystemDescriptor) -> bool:
    """Is every expression of ``small`` also an expression of ``big``?"""
    fs, fb = small.features, big.features
    return (
        (small.constants | {r.name for r in small.extensions})
        <= (big.constants | {r.name for r in big.extensions})
        and (not fs.has_lambda or fb.has_lambda)
        and (not fs.has_rec or fb.has_rec)
        and (not fs.has_function_vars or fb.has_function_vars)
    )


# -- definitional extension --------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


def system_table(sys: SystemDescriptor, base: ConstantTable = BASE_TABLE) -> ConstantTable:
    """Constant semantics for ``sys``, including its extension constants."""
    table = base
    for rule in sys.extensions:
        table = table.extend(rule.sig, _rule_semantics(rule, table))
    return table


def _rule_semantics(rule: DefinitionRule, table: ConstantTable):
    ev = Evaluator(table=table)

    def semantics(nums, funs):
        a, b = nums
        val = ev.term(rule.g, {rule.x: a})
        for i in range(b):
            val = ev.term(rule.h, {rule.prev: val, rule.step: i, rule.x: a})
        return val

    return semantics


def define_prim_rec(
    sys: SystemDescriptor,
    name: str,
    g: Term,
    h: Term,
    x: NumVar = NumVar("x"),
    prev: NumVar = NumVar("u"),
    step: NumVar = NumVar("v"),
) -> tuple[SystemDescriptor, DefinitionRule]:
    """Add ``name`` with ``name(x, 0) = g`` and
    ``name(x, step') = h[prev := name(x, step)]``."""
    if not (sys.features.has_rec and sys.features.has_lambda):
        raise LanguageError(f"{sys.name} lacks rec or lambda; cannot define {name}")
    if not _NAME_RE.match(name) or name in KEYWORDS or name in DEFAULT_FUNVAR_NAMES:
        raise LanguageError(f"{name!r} is not a usable constant name")
    if name in BASE_SIGNATURE or name in sys.constants or any(r.name == name for r in sys.extensions):
        raise LanguageError(f"constant {name!r} already exists")
    if len({x, prev, step}) != 3:
        raise LanguageError("x, prev and step must be distinct")
    for label, t, params in (("g", g, {x}), ("h", h, {x, prev, step})):
        if not isinstance(t, Term):
            raise LanguageError(f"{label} must be a term")
        bad = language_violations(t, sys)
        if bad:
            raise LanguageError(f"{label} is not in {sys.name}: {bad[0]}")
        nums, funs = free_vars(t)
        if funs or not nums <= params:
            raise LanguageError(f"{label} has free variables beyond its parameters")
    rule = DefinitionRule(name, x, g, prev, step, h)
    new = replace(
        sys,
        name=f"{sys.name}+{name}",
        extensions=sys.extensions + (rule,),
        base=sys.base or sys.name,
    )
    return new, rule


def expand_defined(e: Expr, rules) -> Expr:
    """Rewrite every extension constant into its rec-term, innermost first."""
    by_name = {r.name: r for r in rules}
    if not by_name:
        return e
    return _expand(e, by_name)


def _expand(e: Expr, rules: dict) -> Expr:
    kids = children(e)
    if kids:
        new_kids = [_expand(k, rules) for k in kids]
        if any(a is not b for a, b in zip(kids, new_kids)):
            e = rebuild(e, new_kids)
    if isinstance(e, ConstApp) and e.const in rules:
        # The rule's own g and h may mention earlier extension constants.
        return _expand(rules[e.const].expand(*e.args), rules)
    if isinstance(e, UnaryConst) and e.const in rules:
        raise LanguageError(f"{e.const} is binary and cannot be used as a functor")
    return e


def base_system(sys: SystemDescriptor) -> SystemDescriptor:
    return get_system(sys.base) if sys.base else sys
