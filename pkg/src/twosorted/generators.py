"""Seeded random generators of terms, functors and formulas.

Values are kept small on purpose: generated terms avoid exponentials and
nested products so that brute-force sweeps over small assignments stay
cheap, and rec steps read their pair-code argument through ``(w)_i``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .syntax.ast import (
    ZERO,
    And,
    Apply,
    ConstApp,
    Eq,
    ExistsFun,
    ExistsNum,
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
    component_term,
    le,
    lt,
    numeral,
    succ,
)

UNARY_OPS = ("succ", "pd", "sg", "sgbar")
BINARY_OPS = ("add", "monus", "minf", "maxf", "absdiff", "rm", "quot")
UNARY_FUNCTORS = ("sg", "sgbar", "pd", "succ")

# Step functors for rec that read the code <prev, i> and grow slowly.
STEP_FUNCTOR_TEXTS = (
    "lam w. expof(w, 0) + expof(w, 1)",
    "lam w. expof(w, 0)'",
    "lam w. expof(w, 1)",
    "lam w. sg(expof(w, 0))",
    "lam w. 0",
    "lam w. rm(expof(w, 0) + expof(w, 1), 5)",
    "lam w. maxf(expof(w, 0), expof(w, 1))",
    "lam w. expof(w, 0) + expof(w, 0)",
    "lam w. monus(expof(w, 0), 1)",
    "lam w. absdiff(expof(w, 0), expof(w, 1))",
)


@dataclass
class Gen:
    """Random syntax from a seeded :class:`random.Random`."""

    rng: random.Random

    @classmethod
    def seeded(cls, seed: int) -> "Gen":
        return cls(random.Random(seed))

    def choice(self, xs):
        return xs[self.rng.randrange(len(xs))]

    def chance(self, p: float) -> bool:
        return self.rng.random() < p

    # -- terms ---------------------------------------------------------------

    def leaf(self, nums) -> Term:
        if nums and self.chance(0.6):
            return self.choice(nums)
        return numeral(self.rng.randrange(4))

    def term(self, nums, depth: int, funs=(), mul: bool = True) -> Term:
        """Small-valued term over ``nums`` and unary applications of ``funs``."""
        if depth <= 0 or self.chance(0.25):
            return self.leaf(nums)
        r = self.rng.random()
        if r < 0.3:
            return ConstApp(self.choice(UNARY_OPS), (self.term(nums, depth - 1, funs, mul),))
        if r < 0.8:
            op = self.choice(BINARY_OPS)
            return ConstApp(op, (self.term(nums, depth - 1, funs, mul), self.term(nums, depth - 1, funs, mul)))
        if r < 0.9 and mul:
            return ConstApp("mul", (self.leaf(nums), self.leaf(nums)))
        if funs:
            return Apply(self.choice(funs), self.term(nums, depth - 1, funs, mul))
        return ConstApp("add", (self.leaf(nums), self.leaf(nums)))

    def step_functor(self, nums=()) -> Functor:
        from .syntax.parser import parse_functor

        if nums and self.chance(0.3):
            w = NumVar("w")
            body = ConstApp(
                self.choice(("add", "maxf", "minf", "absdiff")),
                (component_term(w, self.rng.randrange(2)), self.choice(nums)),
            )
            return Lambda(w, body)
        return parse_functor(self.choice(STEP_FUNCTOR_TEXTS))

    def rec_term(self, nums, funs=()) -> RecApp:
        base = self.term(nums, 1, funs, mul=False)
        arg = self.term(nums, 1, (), mul=False)
        step = self.step_functor(nums)
        return RecApp(base, step, arg)

    def term_with_rec(self, nums, depth: int, funs=(), nested: bool = False) -> Term:
        """A term containing at least one rec; ``nested`` allows rec inside rec
        and rec under lambda."""
        if depth <= 0 or self.chance(0.3):
            r = self.rec_term(nums, funs)
            if nested and self.chance(0.4):
                inner = self.term_with_rec(nums, depth - 1, funs, nested)
                slot = self.rng.randrange(2)
                r = RecApp(inner, r.step, r.arg) if slot == 0 else RecApp(r.base, r.step, inner)
            return r
        if nested and self.chance(0.25):
            v = NumVar("i")
            body = self.term_with_rec(tuple(nums) + (v,), depth - 1, funs, nested)
            return ConstApp("sum", (self.leaf(nums),), (Lambda(v, body),))
        op = self.choice(("add", "monus", "maxf", "absdiff"))
        a = self.term_with_rec(nums, depth - 1, funs, nested)
        b = self.term(nums, depth - 1, funs, mul=False)
        return ConstApp(op, (a, b) if self.chance(0.5) else (b, a))

    def lambda_term(self, nums, depth: int, budget: int) -> Term:
        """A term with between 1 and ``budget`` outermost lambda-occurrences,
        possibly with further lambdas nested inside them."""
        kind = self.rng.random()
        v = self.choice((NumVar("x"), NumVar("i"), NumVar("k")))
        inner_nums = tuple(nums) + (v,)
        if budget > 1 and self.chance(0.4):
            op = self.choice(("add", "maxf", "absdiff"))
            return ConstApp(op, (self.lambda_term(nums, depth, 1), self.lambda_term(nums, depth, budget - 1)))
        if depth > 0 and self.chance(0.3):
            body = self.lambda_term(inner_nums, depth - 1, 1)
        else:
            body = self.term(inner_nums, 2, mul=False)
        lam = Lambda(v, body)
        if kind < 0.5:
            return Apply(lam, self.term(nums, 1, mul=False))
        if kind < 0.8:
            return ConstApp(self.choice(("sum", "maxle", "minle")), (self.leaf(nums),), (lam,))
        return RecApp(self.term(nums, 1, mul=False), self.step_functor(nums), self.leaf(nums))

    # -- formulas ------------------------------------------------------------

    def eq(self, nums, depth: int, funs=()) -> Eq:
        return Eq(self.term(nums, depth, funs), self.term(nums, depth, funs))

    def qf_formula(self, nums, depth: int, funs=()) -> Formula:
        if depth <= 0 or self.chance(0.3):
            return self.eq(nums, 2, funs)
        r = self.rng.random()
        if r < 0.2:
            return Not(self.qf_formula(nums, depth - 1, funs))
        op = self.choice((And, Or, Implies))
        return op(self.qf_formula(nums, depth - 1, funs), self.qf_formula(nums, depth - 1, funs))

    def bounded(self, var: NumVar, bound: Term, body: Formula) -> Formula:
        guard = lt(var, bound) if self.chance(0.5) else le(var, bound)
        if self.chance(0.5):
            return ForallNum(var, Implies(guard, body))
        return ExistsNum(var, And(guard, body))

    def bound_term(self, nums) -> Term:
        if nums and self.chance(0.5):
            return self.choice(nums)
        return numeral(self.rng.randrange(5))

    def bounded_formula(self, nums, depth: int, funs=(), qdepth: int = 2) -> Formula:
        """Quantifier-free or bounded-only formula; bounds are numerals or
        variables; at most ``qdepth`` nested bounded quantifiers."""
        if depth <= 0 or self.chance(0.2):
            return self.eq(nums, 2, funs)
        r = self.rng.random()
        if r < 0.35 and qdepth > 0:
            v = NumVar("q", len(nums))
            bound = self.bound_term(nums)
            body = self.bounded_formula(tuple(nums) + (v,), depth - 1, funs, qdepth - 1)
            return self.bounded(v, bound, body)
        if r < 0.5:
            return Not(self.bounded_formula(nums, depth - 1, funs, qdepth))
        op = self.choice((And, Or, Implies))
        return op(
            self.bounded_formula(nums, depth - 1, funs, qdepth),
            self.bounded_formula(nums, depth - 1, funs, qdepth),
        )

    def formula(self, nums, depth: int, prime) -> Formula:
        """Arbitrary formula (unbounded and function quantifiers allowed)
        whose prime parts come from ``prime(nums)``."""
        if depth <= 0 or self.chance(0.25):
            return prime(nums)
        r = self.rng.random()
        if r < 0.15:
            return Not(self.formula(nums, depth - 1, prime))
        if r < 0.55:
            op = self.choice((And, Or, Implies))
            return op(self.formula(nums, depth - 1, prime), self.formula(nums, depth - 1, prime))
        if r < 0.85:
            v = self.choice((NumVar("x"), NumVar("y"), NumVar("n")))
            q = self.choice((ForallNum, ExistsNum))
            return q(v, self.formula(tuple(set(nums) | {v}), depth - 1, prime))
        f = self.choice((FunVar("alpha"), FunVar("delta")))
        q = self.choice((ForallFun, ExistsFun))
        return q(f, self.formula(nums, depth - 1, prime))


def rec_prime(g: Gen, nums, funs=(), nested: bool = True) -> Eq:
    """A prime formula with at least one rec-term on a random side."""
    r = g.term_with_rec(nums, 2, funs, nested)
    other = g.term(nums, 1, funs, mul=False)
    return Eq(r, other) if g.chance(0.5) else Eq(other, r)


def lambda_prime(g: Gen, nums, budget: int = 2) -> Eq:
    t = g.lambda_term(nums, 1, budget)
    other = g.term(nums, 1, mul=False)
    return Eq(t, other) if g.chance(0.5) else Eq(other, t)


def plain_prime(g: Gen, nums) -> Eq:
    return g.eq(nums, 2, (FunVar("alpha"),))


__all__ = ["Gen", "STEP_FUNCTOR_TEXTS", "lambda_prime", "plain_prime", "rec_prime"]
