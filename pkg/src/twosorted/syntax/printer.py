"""Canonical ASCII printer.

The output re-parses to the identical AST.  Besides the core syntax the
printer re-sugars exactly those shapes the parser expands (``<``, ``<=``,
``|``, ``<->``) so that printed formulas stay readable.
"""

from __future__ import annotations

from .ast import (
    DEFAULT_FUNVAR_NAMES,
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
    numeral_value,
)

# term precedence levels
_ADD, _MUL, _POST = 1, 2, 3
# formula precedence levels
_IMP, _OR, _AND, _UN = 1, 2, 3, 4


def funvar_text(v: FunVar) -> str:
    s = str(v)
    return s if v.name in DEFAULT_FUNVAR_NAMES else "'" + s


def term_text(t: Term, level: int = _ADD) -> str:
    if isinstance(t, NumVar):
        return str(t)
    if isinstance(t, ConstApp):
        n = numeral_value(t)
        if n is not None:
            return str(n)
        if t.const == "succ":
            return term_text(t.args[0], _POST) + "'"
        if t.const == "add":
            s = f"{term_text(t.args[0], _ADD)} + {term_text(t.args[1], _MUL)}"
            return s if level <= _ADD else f"({s})"
        if t.const == "mul":
            s = f"{term_text(t.args[0], _MUL)} * {term_text(t.args[1], _POST)}"
            return s if level <= _MUL else f"({s})"
        parts = [term_text(a) for a in t.args] + [functor_text(u) for u in t.funargs]
        return f"{t.const}({', '.join(parts)})"
    if isinstance(t, Apply):
        u = t.functor
        if isinstance(u, FunVar):
            head = funvar_text(u)
        else:
            head = f"({functor_text(u)})"
        return f"{head}({term_text(t.arg)})"
    if isinstance(t, RecApp):
        return f"rec({term_text(t.base)}; {functor_text(t.step)}; {term_text(t.arg)})"
    raise TypeError(f"not a term: {t!r}")


def functor_text(u: Functor) -> str:
    if isinstance(u, FunVar):
        return funvar_text(u)
    if isinstance(u, UnaryConst):
        return u.const
    if isinstance(u, Lambda):
        return f"lam {u.var}. {term_text(u.body)}"
    raise TypeError(f"not a functor: {u!r}")


def _lt_parts(f: Formula):
    """``(a, b)`` if ``f`` is the expansion of ``a < b``."""
    if (
        isinstance(f, Eq)
        and numeral_value(f.rhs) == 0
        and isinstance(f.lhs, ConstApp)
        and f.lhs.const == "monus"
    ):
        left = f.lhs.args[0]
        if isinstance(left, ConstApp) and left.const == "succ":
            return left.args[0], f.lhs.args[1]
    return None


def _atom_text(f: Formula) -> str | None:
    if isinstance(f, Eq):
        lt = _lt_parts(f)
        if lt is not None:
            return f"{term_text(lt[0])} < {term_text(lt[1])}"
        if (
            numeral_value(f.rhs) == 0
            and isinstance(f.lhs, ConstApp)
            and f.lhs.const == "sg"
            and isinstance(f.lhs.args[0], ConstApp)
            and f.lhs.args[0].const == "rm"
        ):
            b, a = f.lhs.args[0].args
            return f"{term_text(a)} | {term_text(b)}"
        return f"{term_text(f.lhs)} = {term_text(f.rhs)}"
    if isinstance(f, Or):
        lt = _lt_parts(f.left)
        if lt is not None and f.right == Eq(lt[0], lt[1]):
            return f"{term_text(lt[0])} <= {term_text(lt[1])}"
    return None


def _iff_parts(f: Formula):
    if (
        isinstance(f, And)
        and isinstance(f.left, Implies)
        and isinstance(f.right, Implies)
        and f.left.left == f.right.right
        and f.left.right == f.right.left
    ):
        return f.left.left, f.left.right
    return None


_QUANT_WORD = {
    ForallNum: "forall",
    ExistsNum: "exists",
    ForallFun: "forall",
    ExistsFun: "exists",
}


def formula_text(f: Formula, level: int = _IMP) -> str:
    atom = _atom_text(f)
    if atom is not None:
        return atom
    if isinstance(f, Not):
        return "~" + formula_text(f.body, _UN)
    if type(f) in _QUANT_WORD:
        v = funvar_text(f.var) if isinstance(f.var, FunVar) else str(f.var)
        s = f"{_QUANT_WORD[type(f)]} {v}. {formula_text(f.body)}"
        return s if level == _IMP else f"({s})"
    ip = _iff_parts(f)
    if ip is not None:
        s = f"{formula_text(ip[0], _OR)} <-> {formula_text(ip[1], _IMP)}"
        return s if level <= _IMP else f"({s})"
    if isinstance(f, Implies):
        s = f"{formula_text(f.left, _OR)} -> {formula_text(f.right, _IMP)}"
        return s if level <= _IMP else f"({s})"
    if isinstance(f, Or):
        s = f"{formula_text(f.left, _OR)} \\/ {formula_text(f.right, _AND)}"
        return s if level <= _OR else f"({s})"
    if isinstance(f, And):
        s = f"{formula_text(f.left, _AND)} & {formula_text(f.right, _UN)}"
        return s if level <= _AND else f"({s})"
    raise TypeError(f"not a formula: {f!r}")


def to_text(e: Expr) -> str:
    if isinstance(e, Formula):
        return formula_text(e)
    if isinstance(e, Term):
        return term_text(e)
    if isinstance(e, Functor):
        return functor_text(e)
    raise TypeError(f"not an expression: {e!r}")
