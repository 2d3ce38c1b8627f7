"""Two-sorted abstract syntax.

Terms denote numbers, functors denote one-place number-theoretic
functions, formulas are built from equalities between terms.  Variables
are themselves expression nodes: a :class:`NumVar` is a term and a
:class:`FunVar` is a functor.

All nodes are frozen dataclasses; sequences are stored as tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..errors import ArityError, SortError
from .signature import BASE_SIGNATURE

_NAME_RE = re.compile(r"[A-Za-z_]+\Z")

KEYWORDS = frozenset({"forall", "exists", "lam", "rec"})

# Bare identifiers that the parser reads as function variables.
DEFAULT_FUNVAR_NAMES = frozenset(
    {
        "alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta",
        "theta", "iota", "kappa", "mu", "nu", "xi", "rho", "sigma",
        "tau", "phi", "chi", "psi", "omega",
    }
)

_RESERVED = frozenset(
    KEYWORDS | {re.sub(r"\d+\Z", "", n) for n in BASE_SIGNATURE}
)


def _check_name(name: str, funvar: bool) -> None:
    if not _NAME_RE.match(name):
        raise ValueError(f"variable names are letters/underscores only: {name!r}")
    if name in _RESERVED:
        raise ValueError(f"{name!r} is reserved")
    if not funvar and name in DEFAULT_FUNVAR_NAMES:
        raise ValueError(f"{name!r} is reserved for function variables")


class Term:
    __slots__ = ()


class Functor:
    __slots__ = ()


class Formula:
    __slots__ = ()


@dataclass(frozen=True, order=True)
class NumVar(Term):
    name: str
    index: int = 0

    def __post_init__(self):
        _check_name(self.name, funvar=False)
        if self.index < 0:
            raise ValueError("variable index must be >= 0")

    def __str__(self):
        return self.name if self.index == 0 else f"{self.name}{self.index}"


@dataclass(frozen=True, order=True)
class FunVar(Functor):
    name: str
    index: int = 0

    def __post_init__(self):
        _check_name(self.name, funvar=True)
        if self.index < 0:
            raise ValueError("variable index must be >= 0")

    def __str__(self):
        return self.name if self.index == 0 else f"{self.name}{self.index}"


Var = Union[NumVar, FunVar]


@dataclass(frozen=True)
class ConstApp(Term):
    const: str
    args: tuple[Term, ...] = ()
    funargs: tuple[Functor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "funargs", tuple(self.funargs))
        for a in self.args:
            if not isinstance(a, Term):
                raise SortError(f"{self.const}: number argument expected, got {a!r}")
        for u in self.funargs:
            if not isinstance(u, Functor):
                raise SortError(f"{self.const}: function argument expected, got {u!r}")
        sig = BASE_SIGNATURE.get(self.const)
        if sig is not None and (len(self.args), len(self.funargs)) != (sig.k, sig.l):
            raise ArityError(
                f"{self.const} takes {sig.k} number and {sig.l} function arguments, "
                f"got {len(self.args)} and {len(self.funargs)}"
            )


@dataclass(frozen=True)
class Apply(Term):
    functor: Functor
    arg: Term

    def __post_init__(self):
        if not isinstance(self.functor, Functor) or not isinstance(self.arg, Term):
            raise SortError("application needs a functor and a term")


@dataclass(frozen=True)
class RecApp(Term):
    """``rec(base, step, arg)``: the recursor."""

    base: Term
    step: Functor
    arg: Term

    def __post_init__(self):
        if not (
            isinstance(self.base, Term)
            and isinstance(self.step, Functor)
            and isinstance(self.arg, Term)
        ):
            raise SortError("rec(t, u, s) needs term, functor, term")


@dataclass(frozen=True)
class UnaryConst(Functor):
    const: str

    def __post_init__(self):
        sig = BASE_SIGNATURE.get(self.const)
        if sig is not None and not sig.is_unary:
            raise ArityError(f"{self.const} is not a unary function constant")


@dataclass(frozen=True)
class Lambda(Functor):
    var: NumVar
    body: Term

    def __post_init__(self):
        if not isinstance(self.var, NumVar) or not isinstance(self.body, Term):
            raise SortError("lambda binds a number variable over a term")


@dataclass(frozen=True)
class Eq(Formula):
    lhs: Term
    rhs: Term

    def __post_init__(self):
        if not isinstance(self.lhs, Term) or not isinstance(self.rhs, Term):
            raise SortError("prime formulas equate two terms")


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula

    def __post_init__(self):
        if not isinstance(self.left, Formula) or not isinstance(self.right, Formula):
            raise SortError(f"{type(self).__name__} joins two formulas")


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Implies(_Binary):
    pass


@dataclass(frozen=True)
class _NumQuant(Formula):
    var: NumVar
    body: Formula

    def __post_init__(self):
        if not isinstance(self.var, NumVar) or not isinstance(self.body, Formula):
            raise SortError(f"{type(self).__name__} binds a number variable")


class ForallNum(_NumQuant):
    pass


class ExistsNum(_NumQuant):
    pass


@dataclass(frozen=True)
class _FunQuant(Formula):
    var: FunVar
    body: Formula

    def __post_init__(self):
        if not isinstance(self.var, FunVar) or not isinstance(self.body, Formula):
            raise SortError(f"{type(self).__name__} binds a function variable")


class ForallFun(_FunQuant):
    pass


class ExistsFun(_FunQuant):
    pass


Expr = Union[Term, Functor, Formula]

BINARY = (And, Or, Implies)
NUM_QUANTS = (ForallNum, ExistsNum)
FUN_QUANTS = (ForallFun, ExistsFun)
QUANTS = NUM_QUANTS + FUN_QUANTS


# -- construction helpers ---------------------------------------------------

ZERO = ConstApp("zero")


def succ(t: Term) -> Term:
    return ConstApp("succ", (t,))


def numeral(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals denote natural numbers")
    t: Term = ZERO
    for _ in range(n):
        t = succ(t)
    return t


def numeral_value(t: Term) -> int | None:
    """The value of ``t`` if it is a numeral ``0''...'``, else ``None``."""
    n = 0
    while isinstance(t, ConstApp) and t.const == "succ":
        t = t.args[0]
        n += 1
    if isinstance(t, ConstApp) and t.const == "zero":
        return n
    return None


def app(const: str, *args: Term | Functor) -> ConstApp:
    """``app("sum", t, u)`` splits positional arguments by sort."""
    nums = tuple(a for a in args if isinstance(a, Term))
    funs = tuple(a for a in args if isinstance(a, Functor))
    if nums + funs != tuple(args):
        raise SortError("number arguments must precede function arguments")
    return ConstApp(const, nums, funs)


def add(a: Term, b: Term) -> Term:
    return ConstApp("add", (a, b))


def mul(a: Term, b: Term) -> Term:
    return ConstApp("mul", (a, b))


def component_term(a: Term, i: int | Term) -> Term:
    """The term ``(a)_i``."""
    return ConstApp("expof", (a, numeral(i) if isinstance(i, int) else i))


def lt(a: Term, b: Term) -> Formula:
    """``a < b``, i.e. ``a' - b = 0``."""
    return Eq(ConstApp("monus", (succ(a), b)), ZERO)


def le(a: Term, b: Term) -> Formula:
    return Or(lt(a, b), Eq(a, b))


def divides(a: Term, b: Term) -> Formula:
    """``a | b``, i.e. ``sg(rm(b, a)) = 0``."""
    return Eq(ConstApp("sg", (ConstApp("rm", (b, a)),)), ZERO)


def iff(a: Formula, b: Formula) -> Formula:
    return And(Implies(a, b), Implies(b, a))


_FIRST_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def seq_code_term(items: list[Term] | tuple[Term, ...]) -> Term:
    """``<t0, ..., tk>`` as the product of ``p_i ^ t_i`` with prime numerals.

    The empty sequence is the numeral 1.
    """
    if not items:
        return numeral(1)
    factors = []
    for i, t in enumerate(items):
        p = _FIRST_PRIMES[i] if i < len(_FIRST_PRIMES) else None
        base = numeral(p) if p is not None else ConstApp("prime", (numeral(i),))
        factors.append(ConstApp("exp", (base, t)))
    out = factors[0]
    for f in factors[1:]:
        out = mul(out, f)
    return out
