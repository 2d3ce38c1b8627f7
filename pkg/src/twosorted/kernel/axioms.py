"""Defining axioms of f0..f25 as object-language formulas, and a checker.

Each constant lists its parameters and its defining clauses.  A clause is
either a quantifier-free formula over the parameters or a bounded least
search ``lhs = mu var < bound [cond]``, where the search is run directly
and ``cond`` is decided by evaluating its prime formulas.  Checking a
clause at an argument tuple evaluates both sides under the standard
semantics in :mod:`.constants`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence

from ..errors import ArityError, UnsupportedConstantError
from ..syntax.ast import Formula, Functor, FunVar, Lambda, NumVar, Term, app, succ
from ..syntax.ops import free_var_set, fresh_num, substitute
from ..syntax.parser import parse_formula, parse_functor, parse_term
from .constants import BASE_TABLE, ConstantTable
from .evaluate import EMPTY_ENV, Environment, Evaluator

# "b is prime": b has exactly two divisors d <= b.
PRIME_TEXT = "sum(b', lam d. sgbar(rm(b, d))) = 2"


def prime_formula(b: Term) -> Formula:
    return substitute(parse_formula(PRIME_TEXT), NumVar("b"), b)


@dataclass(frozen=True)
class MuClause:
    lhs: Term
    var: NumVar
    bound: Term
    cond: Formula


Clause = Formula | MuClause


@dataclass(frozen=True)
class DefiningAxioms:
    const: str
    params: tuple[NumVar | FunVar, ...]
    clauses: tuple[Clause, ...]

    @property
    def num_params(self) -> tuple[NumVar, ...]:
        return tuple(p for p in self.params if isinstance(p, NumVar))

    @property
    def fun_params(self) -> tuple[FunVar, ...]:
        return tuple(p for p in self.params if isinstance(p, FunVar))


def _params(text: str) -> tuple:
    out = []
    for name in text.split():
        out.append(FunVar(name) if name == "alpha" else NumVar(name))
    return tuple(out)


def _mu(lhs: str, var: str, bound: str, cond: str) -> MuClause:
    return MuClause(parse_term(lhs), NumVar(var), parse_term(bound), parse_formula(cond))


_AXIOM_TEXT: dict[str, tuple[str, list]] = {
    "zero": ("", ["zero = 0"]),
    "succ": ("a b", ["~a' = 0", "a = b -> a' = b'", "a' = b' -> a = b"]),
    "add": ("a b", ["a + 0 = a", "a + b' = (a + b)'"]),
    "mul": ("a b", ["a * 0 = 0", "a * b' = a * b + a"]),
    "exp": ("a b", ["exp(a, 0) = 1", "exp(a, b') = exp(a, b) * a"]),
    "fact": ("a", ["fact(0) = 1", "fact(a') = fact(a) * a'"]),
    "pd": ("a", ["pd(0) = 0", "pd(a') = a"]),
    "monus": ("a b", ["monus(a, 0) = a", "monus(a, b') = pd(monus(a, b))"]),
    "minf": ("a b", ["minf(a, b) = monus(b, monus(b, a))"]),
    "maxf": ("a b", ["maxf(a, b) = monus(a, b) + b"]),
    "sgbar": ("a", ["sgbar(0) = 1", "sgbar(a') = 0"]),
    "sg": ("a", ["sg(0) = 0", "sg(a') = 1"]),
    "absdiff": ("a b", ["absdiff(a, b) = monus(a, b) + monus(b, a)"]),
    "rm": ("a b", ["rm(0, b) = 0", "rm(a', b) = rm(a, b)' * sg(absdiff(b, rm(a, b)'))"]),
    "quot": (
        "a b",
        ["quot(0, b) = 0", "quot(a', b) = quot(a, b) + sgbar(absdiff(b, rm(a, b)'))"],
    ),
    "sum": ("z alpha", ["sum(0, alpha) = 0", "sum(z', alpha) = sum(z, alpha) + alpha(z)"]),
    "prod": ("z alpha", ["prod(0, alpha) = 1", "prod(z', alpha) = prod(z, alpha) * alpha(z)"]),
    "minle": (
        "z alpha",
        ["minle(0, alpha) = alpha(0)", "minle(z', alpha) = minf(minle(z, alpha), alpha(z'))"],
    ),
    "maxle": (
        "z alpha",
        ["maxle(0, alpha) = alpha(0)", "maxle(z', alpha) = maxf(maxle(z, alpha), alpha(z'))"],
    ),
    "prime": (
        "i",
        [
            "prime(0) = 2",
            _mu("prime(i')", "b", "fact(prime(i)) + 2", "prime(i) < b & " + PRIME_TEXT),
        ],
    ),
    "expof": (
        "a i",
        [_mu("expof(a, i)", "x", "a", "exp(prime(i), x) | a & ~exp(prime(i), x') | a")],
    ),
    "lh": ("a", ["lh(a) = sum(a, lam i. sg(expof(a, i)))"]),
    "concat": (
        "a b",
        ["concat(a, b) = a * prod(lh(b), lam i. exp(prime(lh(a) + i), expof(b, i)))"],
    ),
    "bar": ("x alpha", ["bar(x, alpha) = prod(x, lam i. exp(prime(i), alpha(i) + 1))"]),
    "tilde": ("x alpha", ["tilde(x, alpha) = prod(x, lam i. exp(prime(i), alpha(i)))"]),
    "join": (
        "a b",
        [
            "join(a, b) = prod(maxf(a, b), lam i. exp(prime(i), "
            "maxf(expof(a, i), expof(b, i))))"
        ],
    ),
}

DEFINING_AXIOMS: dict[str, DefiningAxioms] = {
    name: DefiningAxioms(
        name,
        _params(params),
        tuple(c if isinstance(c, MuClause) else parse_formula(c) for c in clauses),
    )
    for name, (params, clauses) in _AXIOM_TEXT.items()
}

# Closed functors used to instantiate function parameters.
FUNCTOR_POOL: tuple[Functor, ...] = tuple(
    parse_functor(s)
    for s in (
        "lam x. 0",
        "lam x. x",
        "lam x. x'",
        "sg",
        "sgbar",
        "pd",
        "lam x. x * x",
        "lam x. rm(x, 3)",
        "lam x. x + x",
        "lam x. quot(x, 2)",
    )
)


def bounded_mu(ev: Evaluator, var: NumVar, bound: int, cond: Formula, asg: dict) -> int:
    """Least ``n < bound`` satisfying ``cond``, or ``bound`` if there is none."""
    for n in range(bound):
        asg[var] = n
        if ev.holds(cond, asg):
            return n
    return bound


def mu_term(var: NumVar, bound: Term, r: Term) -> Term:
    """The sum-of-products term for ``mu var < bound``, given ``r`` with
    ``r <= 1`` and ``r = 0`` exactly where the condition holds."""
    x = fresh_num("x", free_var_set(r) | {var})
    return app("sum", bound, Lambda(x, app("prod", succ(x), Lambda(var, r))))


def _lookup(const: str) -> DefiningAxioms:
    if const == "ccp":
        raise UnsupportedConstantError("ccp has no defining axioms here")
    try:
        return DEFINING_AXIOMS[const]
    except KeyError:
        raise UnsupportedConstantError(f"no defining axioms for {const!r}") from None


def check_clause(
    clause: Clause, asg: dict, env: Environment = EMPTY_ENV, table: ConstantTable = BASE_TABLE
) -> bool:
    ev = Evaluator(env, table)
    if isinstance(clause, MuClause):
        bound = ev.term(clause.bound, asg)
        return ev.term(clause.lhs, asg) == bounded_mu(ev, clause.var, bound, clause.cond, dict(asg))
    return ev.holds(clause, asg)


def check_defining_axiom(
    const: str,
    nums: Sequence[int] = (),
    funs: Sequence[Functor] = (),
    table: ConstantTable = BASE_TABLE,
) -> bool:
    """Do all defining clauses of ``const`` hold at these arguments?

    ``nums`` and ``funs`` bind the constant's number and function parameters
    in order (``a, b``; ``z, alpha``; ``x, alpha``; ``a, i``; ``i``).
    """
    ax = _lookup(const)
    if len(nums) != len(ax.num_params) or len(funs) != len(ax.fun_params):
        raise ArityError(
            f"{const} takes {len(ax.num_params)} number and "
            f"{len(ax.fun_params)} function parameters"
        )
    asg = dict(zip(ax.num_params, nums))
    env = Environment(dict(zip(ax.fun_params, funs)))
    return all(check_clause(c, asg, env, table) for c in ax.clauses)


def argument_tuples(
    const: str, max_arg: int = 40, pool: Sequence[Functor] = FUNCTOR_POOL
) -> Iterator[tuple[tuple[int, ...], tuple[Functor, ...]]]:
    """Every argument tuple with numbers in ``0..max_arg`` and functors from ``pool``."""
    ax = _lookup(const)
    nums = product(range(max_arg + 1), repeat=len(ax.num_params))
    for ns in nums:
        for fs in product(pool, repeat=len(ax.fun_params)):
            yield ns, fs


def sweep(max_arg: int = 40, pool: Sequence[Functor] = FUNCTOR_POOL) -> dict[str, list]:
    """Failing argument tuples per constant over the full grid."""
    return {
        const: [
            (ns, fs) for ns, fs in argument_tuples(const, max_arg, pool)
            if not check_defining_axiom(const, ns, fs)
        ]
        for const in DEFINING_AXIOMS
    }
