"""Call-by-value evaluation under an environment and an assignment.

Function variables are bound to closed functors of the object language,
number variables to naturals.  Functors evaluate to Python callables.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Mapping

from ..errors import InputError, UnboundVariableError, UndecidableFormulaError
from ..syntax.ast import (
    And,
    Apply,
    ConstApp,
    Eq,
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
)
from ..syntax.ops import free_var_set
from ..syntax.parser import parse_functor, split_ident
from ..syntax.printer import to_text
from . import codec
from .constants import BASE_TABLE, ConstantTable

NatFn = Callable[[int], int]


@dataclass(frozen=True)
class Environment:
    """Function variables bound to closed functors."""

    funvars: Mapping[FunVar, Functor] = field(default_factory=dict)

    def __post_init__(self):
        for v, u in self.funvars.items():
            if not isinstance(u, Functor):
                raise InputError(f"{v} must be bound to a functor")
            if free_var_set(u):
                raise InputError(f"functor bound to {v} is not closed: {to_text(u)}")
        object.__setattr__(self, "funvars", MappingProxyType(dict(self.funvars)))

    def lookup(self, v: FunVar) -> Functor:
        try:
            return self.funvars[v]
        except KeyError:
            raise UnboundVariableError(f"function variable {v} is unbound") from None

    def bind(self, v: FunVar, u: Functor) -> "Environment":
        return Environment({**self.funvars, v: u})


@dataclass(frozen=True)
class Assignment:
    numvars: Mapping[NumVar, int] = field(default_factory=dict)

    def __post_init__(self):
        for v, n in self.numvars.items():
            if not isinstance(n, int) or n < 0:
                raise InputError(f"{v} must be assigned a natural number")
        object.__setattr__(self, "numvars", MappingProxyType(dict(self.numvars)))

    def lookup(self, v: NumVar) -> int:
        try:
            return self.numvars[v]
        except KeyError:
            raise UnboundVariableError(f"number variable {v} is unbound") from None

    def bind(self, v: NumVar, n: int) -> "Assignment":
        return Assignment({**self.numvars, v: n})


EMPTY_ENV = Environment()
EMPTY_ASG = Assignment()


def _var(text: str, cls):
    try:
        name, index = split_ident(text)
        return cls(name, index)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def bindings_from_json(data: Mapping | str) -> tuple[Environment, Assignment]:
    """Read ``{"funvars": {"alpha": "<functor>"}, "numvars": {"x": 3}}``."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(data, Mapping):
        raise InputError("bindings must be a JSON object")
    funs = {
        _var(k, FunVar): parse_functor(v) for k, v in dict(data.get("funvars", {})).items()
    }
    nums = {}
    for k, v in dict(data.get("numvars", {})).items():
        try:
            nums[_var(k, NumVar)] = int(v)
        except (TypeError, ValueError):
            raise InputError(f"value of {k} is not a natural number") from None
    return Environment(funs), Assignment(nums)


def bindings_to_json(env: Environment, asg: Assignment) -> dict:
    return {
        "funvars": {str(v): to_text(u) for v, u in sorted(env.funvars.items())},
        "numvars": {str(v): n for v, n in sorted(asg.numvars.items())},
    }


class Evaluator:
    """Evaluates expressions against one environment and constant table.

    Function-variable handles are built once per evaluator.
    """

    def __init__(self, env: Environment = EMPTY_ENV, table: ConstantTable = BASE_TABLE):
        self.env = env
        self.table = table
        self._fun_cache: dict[FunVar, NatFn] = {}

    def term(self, t: Term, asg: Mapping[NumVar, int]) -> int:
        if isinstance(t, NumVar):
            try:
                return asg[t]
            except KeyError:
                raise UnboundVariableError(f"number variable {t} is unbound") from None
        if isinstance(t, ConstApp):
            if t.const == "succ":
                n = 0
                while isinstance(t, ConstApp) and t.const == "succ":
                    t = t.args[0]
                    n += 1
                return self.term(t, asg) + n
            d = self.table[t.const]
            nums = tuple(self.term(a, asg) for a in t.args)
            funs = tuple(self.functor(u, asg) for u in t.funargs)
            return d(nums, funs)
        if isinstance(t, Apply):
            f = self.functor(t.functor, asg)
            return f(self.term(t.arg, asg))
        if isinstance(t, RecApp):
            base = self.term(t.base, asg)
            step = self.functor(t.step, asg)
            return codec.iterate(base, step, self.term(t.arg, asg))[-1]
        raise TypeError(f"not a term: {t!r}")

    def functor(self, u: Functor, asg: Mapping[NumVar, int]) -> NatFn:
        if isinstance(u, FunVar):
            f = self._fun_cache.get(u)
            if f is None:
                f = self.functor(self.env.lookup(u), {})
                self._fun_cache[u] = f
            return f
        if isinstance(u, UnaryConst):
            d = self.table[u.const]
            return lambda n: d((n,))
        if isinstance(u, Lambda):
            var, body = u.var, u.body

            def f(n: int) -> int:
                inner = dict(asg)
                inner[var] = n
                return self.term(body, inner)

            return f
        raise TypeError(f"not a functor: {u!r}")

    def holds(self, f: Formula, asg: Mapping[NumVar, int]) -> bool:
        """Truth of a quantifier-free formula."""
        if isinstance(f, Eq):
            return self.term(f.lhs, asg) == self.term(f.rhs, asg)
        if isinstance(f, Not):
            return not self.holds(f.body, asg)
        if isinstance(f, And):
            return self.holds(f.left, asg) and self.holds(f.right, asg)
        if isinstance(f, Or):
            return self.holds(f.left, asg) or self.holds(f.right, asg)
        if isinstance(f, Implies):
            return (not self.holds(f.left, asg)) or self.holds(f.right, asg)
        raise UndecidableFormulaError("quantified formula where quantifier-free was expected")


def _asg(asg) -> Mapping[NumVar, int]:
    if asg is None:
        return {}
    return asg.numvars if isinstance(asg, Assignment) else asg


def eval_term(
    t: Term,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    table: ConstantTable = BASE_TABLE,
) -> int:
    return Evaluator(env, table).term(t, _asg(asg))


def eval_functor(
    u: Functor,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    table: ConstantTable = BASE_TABLE,
) -> NatFn:
    return Evaluator(env, table).functor(u, _asg(asg))


def holds_qf(
    f: Formula,
    env: Environment = EMPTY_ENV,
    asg: Assignment | Mapping[NumVar, int] | None = None,
    table: ConstantTable = BASE_TABLE,
) -> bool:
    return Evaluator(env, table).holds(f, _asg(asg))
