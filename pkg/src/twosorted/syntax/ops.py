"""Structural operations: traversal, free variables, capture-avoiding
substitution, congruence (alpha-equivalence) and the ``t^w`` coding
substitution."""

from __future__ import annotations

from typing import Callable, Iterator, Mapping

from ..errors import SortError, SyntaxConditionError
from .ast import (
    BINARY,
    FUN_QUANTS,
    NUM_QUANTS,
    Apply,
    ConstApp,
    Eq,
    Expr,
    Formula,
    Functor,
    FunVar,
    Lambda,
    Not,
    NumVar,
    RecApp,
    Term,
    UnaryConst,
    Var,
    component_term,
)

Path = tuple[int, ...]


# -- generic traversal ------------------------------------------------------

def children(e: Expr) -> tuple[Expr, ...]:
    """Immediate subexpressions in left-to-right textual order.

    Binder variables are not children; they are part of the node.
    """
    if isinstance(e, (NumVar, FunVar, UnaryConst)):
        return ()
    if isinstance(e, ConstApp):
        return e.args + e.funargs
    if isinstance(e, Apply):
        return (e.functor, e.arg)
    if isinstance(e, RecApp):
        return (e.base, e.step, e.arg)
    if isinstance(e, Lambda):
        return (e.body,)
    if isinstance(e, Eq):
        return (e.lhs, e.rhs)
    if isinstance(e, Not):
        return (e.body,)
    if isinstance(e, BINARY):
        return (e.left, e.right)
    if isinstance(e, NUM_QUANTS + FUN_QUANTS):
        return (e.body,)
    raise TypeError(f"not an expression: {e!r}")


def rebuild(e: Expr, kids: tuple[Expr, ...] | list[Expr]) -> Expr:
    """A copy of ``e`` with its children replaced, in :func:`children` order."""
    kids = tuple(kids)
    if isinstance(e, (NumVar, FunVar, UnaryConst)):
        return e
    if isinstance(e, ConstApp):
        n = len(e.args)
        return ConstApp(e.const, kids[:n], kids[n:])
    if isinstance(e, Apply):
        return Apply(*kids)
    if isinstance(e, RecApp):
        return RecApp(*kids)
    if isinstance(e, Lambda):
        return Lambda(e.var, kids[0])
    if isinstance(e, Eq):
        return Eq(*kids)
    if isinstance(e, Not):
        return Not(kids[0])
    if isinstance(e, BINARY):
        return type(e)(*kids)
    return type(e)(e.var, kids[0])


def binder(e: Expr) -> Var | None:
    if isinstance(e, Lambda) or isinstance(e, NUM_QUANTS + FUN_QUANTS):
        return e.var
    return None


def subexpressions(e: Expr) -> Iterator[tuple[Path, Expr]]:
    """Pre-order walk yielding ``(path, node)``; leftmost occurrences come first."""
    stack: list[tuple[Path, Expr]] = [((), e)]
    while stack:
        path, node = stack.pop()
        yield path, node
        kids = children(node)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))


def at_path(e: Expr, path: Path) -> Expr:
    for i in path:
        e = children(e)[i]
    return e


def replace_at(e: Expr, path: Path, new: Expr) -> Expr:
    if not path:
        return new
    kids = list(children(e))
    kids[path[0]] = replace_at(kids[path[0]], path[1:], new)
    return rebuild(e, kids)


def binders_along(e: Expr, path: Path) -> list[Var]:
    """Variables bound by the nodes strictly above ``path``."""
    out = []
    for i in path:
        b = binder(e)
        if b is not None:
            out.append(b)
        e = children(e)[i]
    return out


def contains(e: Expr, pred: Callable[[Expr], bool]) -> bool:
    return any(pred(n) for _, n in subexpressions(e))


def has_rec(e: Expr) -> bool:
    return contains(e, lambda n: isinstance(n, RecApp))


def has_lambda(e: Expr) -> bool:
    return contains(e, lambda n: isinstance(n, Lambda))


def constants_used(e: Expr) -> set[str]:
    out = set()
    for _, n in subexpressions(e):
        if isinstance(n, (ConstApp, UnaryConst)):
            out.add(n.const)
    return out


# -- variables --------------------------------------------------------------

_EMPTY: tuple[frozenset, frozenset] = (frozenset(), frozenset())


def free_vars(e: Expr) -> tuple[frozenset[NumVar], frozenset[FunVar]]:
    """Free number variables and free function variables of ``e``."""
    cached = e.__dict__.get("_fv")
    if cached is not None:
        return cached
    if isinstance(e, NumVar):
        out = (frozenset((e,)), frozenset())
    elif isinstance(e, FunVar):
        out = (frozenset(), frozenset((e,)))
    else:
        nums: set = set()
        funs: set = set()
        for k in children(e):
            kn, kf = free_vars(k)
            nums |= kn
            funs |= kf
        b = binder(e)
        if isinstance(b, NumVar):
            nums.discard(b)
        elif isinstance(b, FunVar):
            funs.discard(b)
        out = (frozenset(nums), frozenset(funs)) if nums or funs else _EMPTY
    object.__setattr__(e, "_fv", out)
    return out


def free_var_set(e: Expr) -> frozenset:
    n, f = free_vars(e)
    return n | f


def all_vars(e: Expr) -> frozenset:
    """Every variable occurring in ``e``, free, bound or as a binder."""
    cached = e.__dict__.get("_av")
    if cached is not None:
        return cached
    if isinstance(e, (NumVar, FunVar)):
        out = frozenset((e,))
    else:
        acc: set = set()
        for k in children(e):
            acc |= all_vars(k)
        b = binder(e)
        if b is not None:
            acc.add(b)
        out = frozenset(acc)
    object.__setattr__(e, "_av", out)
    return out


def fresh_num(name: str, avoid) -> NumVar:
    i = 0
    while NumVar(name, i) in avoid:
        i += 1
    return NumVar(name, i)


def fresh_fun(name: str, avoid) -> FunVar:
    i = 0
    while FunVar(name, i) in avoid:
        i += 1
    return FunVar(name, i)


def var_ordering(*exprs: Expr) -> list[NumVar]:
    """Free number variables of ``exprs`` in ascending ``(name, index)`` order."""
    acc: set = set()
    for e in exprs:
        acc |= free_vars(e)[0]
    return sorted(acc)


# -- substitution -----------------------------------------------------------

def _check_sorts(target: Var, replacement: Expr) -> None:
    if isinstance(target, NumVar):
        if not isinstance(replacement, Term):
            raise SortError(f"cannot substitute {replacement!r} for number variable {target}")
    elif isinstance(target, FunVar):
        if not isinstance(replacement, Functor):
            raise SortError(f"cannot substitute {replacement!r} for function variable {target}")
    else:
        raise SortError(f"substitution target must be a variable, got {target!r}")


def substitute(e: Expr, target: Var, replacement: Expr) -> Expr:
    """Capture-avoiding ``e[target := replacement]``."""
    return substitute_many(e, {target: replacement})


def substitute_many(e: Expr, mapping: Mapping[Var, Expr]) -> Expr:
    """Simultaneous capture-avoiding substitution.

    A bound variable is renamed (same name, smallest unused index) only when
    it would capture a free variable of a replacement.
    """
    for t, r in mapping.items():
        _check_sorts(t, r)
    return _subst(e, dict(mapping))


def _subst(e: Expr, m: dict) -> Expr:
    fv = free_var_set(e)
    m = {v: r for v, r in m.items() if v in fv}
    if not m:
        return e
    if isinstance(e, (NumVar, FunVar)):
        return m[e]
    b = binder(e)
    if b is None:
        return rebuild(e, [_subst(k, m) for k in children(e)])
    # b is not free in e, so it is not a key of m.
    body = children(e)[0]
    repl_fv: set = set()
    for r in m.values():
        repl_fv |= free_var_set(r)
    if b in repl_fv:
        avoid = repl_fv | free_var_set(body) | set(m)
        nb = fresh_num(b.name, avoid) if isinstance(b, NumVar) else fresh_fun(b.name, avoid)
        m = dict(m)
        m[b] = nb
        b = nb
    new_body = _subst(body, m)
    return type(e)(b, new_body)


def is_free_for(replacement: Expr, target: Var, e: Expr) -> bool:
    """True iff substituting ``replacement`` at the free occurrences of
    ``target`` in ``e`` captures none of the replacement's free variables."""
    rfv = free_var_set(replacement)
    if not rfv:
        return True

    def walk(node: Expr, bound: frozenset) -> bool:
        if target not in free_var_set(node):
            return True
        if node == target:
            return not (rfv & bound)
        b = binder(node)
        if b is not None:
            bound = bound | {b}
        return all(walk(k, bound) for k in children(node))

    return walk(e, frozenset())


# -- congruence -------------------------------------------------------------

def _canon(e: Expr, env: dict, depth: int):
    if isinstance(e, (NumVar, FunVar)):
        d = env.get(e)
        return ("bound", type(e).__name__, d) if d is not None else ("free", e)
    b = binder(e)
    if b is not None:
        env2 = dict(env)
        env2[b] = depth
        return (type(e).__name__, type(b).__name__, _canon(children(e)[0], env2, depth + 1))
    head: tuple = (type(e).__name__,)
    if isinstance(e, (ConstApp, UnaryConst)):
        head += (e.const, len(e.args) if isinstance(e, ConstApp) else -1)
    return head + tuple(_canon(k, env, depth) for k in children(e))


def congruent(a: Expr, b: Expr) -> bool:
    """Identical up to renaming of bound variables."""
    if a == b:
        return True
    return _canon(a, {}, 0) == _canon(b, {}, 0)


def canonical_key(e: Expr):
    """A hashable key equal for exactly the congruent expressions."""
    return _canon(e, {}, 0)


# -- the t^w notation -------------------------------------------------------

def superscript_w(t: Term | Functor, w: NumVar, ordering: list[NumVar]) -> Term | Functor:
    """Replace each free occurrence of ``ordering[i]`` in ``t`` by ``(w)_i``."""
    if w in all_vars(t):
        raise SyntaxConditionError(f"{w} occurs in the expression")
    if len(set(ordering)) != len(ordering):
        raise SyntaxConditionError("variable ordering has duplicates")
    missing = free_vars(t)[0] - set(ordering)
    if missing:
        names = ", ".join(str(v) for v in sorted(missing))
        raise SyntaxConditionError(f"ordering does not cover free variables {names}")
    return substitute_many(t, {x: component_term(w, i) for i, x in enumerate(ordering)})


def as_formula(e: Expr) -> Formula:
    if not isinstance(e, Formula):
        raise SortError("formula expected")
    return e
