"""Axiom schemata: instantiation with side conditions, and recognition.

Each schema is described by three functions: ``build`` assembles the
formula from its pieces, ``conditions`` evaluates the side conditions and
``destructure`` reads candidate pieces back off a formula.  Matching is
destructure, check, rebuild, then compare up to congruence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from types import MappingProxyType
from typing import Callable, Mapping

from ..errors import InputError, SchemaError
from ..syntax.ast import (
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
    iff,
    le,
    lt,
    numeral,
    seq_code_term,
    succ,
)
from ..syntax.ops import (
    all_vars,
    binder,
    children,
    congruent,
    free_vars,
    fresh_fun,
    fresh_num,
    is_free_for,
    rebuild,
    substitute,
)
from ..syntax.parser import exists_unique
from ..translations import a_formula, match_a_formula


class SchemaId(str, Enum):
    IND = "IND"
    LambdaConv = "LambdaConv"
    REC = "REC"
    RecAxiom = "RecAxiom"
    AC00Bang = "AC00Bang"
    QFAC00 = "QFAC00"
    QFtAC00 = "QFtAC00"
    CFd = "CFd"
    ReflRepl = "ReflRepl"
    FunVarEq = "FunVarEq"
    UnboundedSearch = "UnboundedSearch"
    MinimalCountableChoice = "MinimalCountableChoice"
    BIMPrimRec = "BIMPrimRec"
    WKVPrimRec = "WKVPrimRec"


Pieces = Mapping[str, object]
Conditions = list[tuple[str, bool]]


@dataclass(frozen=True)
class SchemaInstance:
    schema: SchemaId
    pieces: Mapping[str, object]
    side_conditions: tuple[tuple[str, bool], ...]
    formula: Formula

    def __post_init__(self):
        object.__setattr__(self, "pieces", MappingProxyType(dict(self.pieces)))

    @property
    def valid(self) -> bool:
        return all(ok for _, ok in self.side_conditions)


@dataclass(frozen=True)
class _Schema:
    kinds: Mapping[str, str]
    build: Callable[[dict], Formula]
    conditions: Callable[[dict], Conditions]
    destructure: Callable[[Formula], dict | None]
    defaults: Callable[[dict], dict] = field(default=lambda p: {})


# -- small helpers -----------------------------------------------------------

def _occurs_free(v, e) -> bool:
    n, f = free_vars(e)
    return v in n or v in f


def _quantifier_free(f: Formula) -> bool:
    if isinstance(f, Eq):
        return True
    if isinstance(f, Not):
        return _quantifier_free(f.body)
    if isinstance(f, (And, Or, Implies)):
        return _quantifier_free(f.left) and _quantifier_free(f.right)
    return False


def _pair(a: Term, b: Term) -> Term:
    return seq_code_term((a, b))


def _app2(u, m: Term, n: Term, pair: str = "J") -> Term:
    """``u(m, n)`` read through the pairing constant."""
    return Apply(u, ConstApp(pair, (m, n)))


def _app3(u, m: Term, n: Term, k: Term) -> Term:
    return Apply(u, ConstApp("J", (m, ConstApp("J", (n, k)))))


def _neq(a: Term, b: Term) -> Formula:
    return Not(Eq(a, b))


def anti_unify(a, b, left, right, hole):
    """An expression ``c`` with ``c[hole := left] = a`` and ``c[hole := right] = b``
    at the positions where ``a`` shows ``left`` and ``b`` shows ``right``;
    ``None`` if the two differ anywhere else."""
    if a == left and b == right:
        return hole
    if a == b:
        return a
    if type(a) is not type(b) or binder(a) != binder(b):
        return None
    if isinstance(a, ConstApp) and (a.const, len(a.args)) != (b.const, len(b.args)):
        return None
    ka, kb = children(a), children(b)
    if len(ka) != len(kb) or not ka:
        return None
    out = []
    for x, y in zip(ka, kb):
        c = anti_unify(x, y, left, right, hole)
        if c is None:
            return None
        out.append(c)
    return rebuild(a, out)


# -- IND ---------------------------------------------------------------------

def _ind_build(p):
    A, x = p["A"], p["x"]
    return Implies(
        And(substitute(A, x, ZERO), ForallNum(x, Implies(A, substitute(A, x, succ(x))))), A
    )


def _ind_destructure(f):
    if (
        isinstance(f, Implies)
        and isinstance(f.left, And)
        and isinstance(f.left.right, ForallNum)
        and isinstance(f.left.right.body, Implies)
    ):
        return {"A": f.right, "x": f.left.right.var}
    return None


# -- LambdaConv --------------------------------------------------------------

def _lc_build(p):
    t, x, s = p["t"], p["x"], p["s"]
    return Eq(Apply(Lambda(x, t), s), substitute(t, x, s))


def _lc_conditions(p):
    return [("s is free for x in t(x)", is_free_for(p["s"], p["x"], p["t"]))]


def _lc_destructure(f):
    if isinstance(f, Eq) and isinstance(f.lhs, Apply) and isinstance(f.lhs.functor, Lambda):
        lam = f.lhs.functor
        return {"t": lam.body, "x": lam.var, "s": f.lhs.arg}
    return None


# -- REC and the Rec axiom ---------------------------------------------------

def _rec_build(p):
    t, u, s = p["t"], p["u"], p["s"]
    return And(
        Eq(RecApp(t, u, ZERO), t),
        Eq(RecApp(t, u, succ(s)), Apply(u, _pair(RecApp(t, u, s), s))),
    )


def _rec_destructure(f):
    if isinstance(f, And) and isinstance(f.right, Eq) and isinstance(f.right.lhs, RecApp):
        r = f.right.lhs
        if isinstance(r.arg, ConstApp) and r.arg.const == "succ":
            return {"t": r.base, "u": r.step, "s": r.arg.args[0]}
    return None


def _recax_defaults(p):
    used = frozenset().union(*(all_vars(p[k]) for k in ("t", "u", "s") if k in p))
    return {"beta": fresh_fun("beta", used), "z": fresh_num("z", used)}


def _recax_build(p):
    t, u, s = p["t"], p["u"], p["s"]
    return a_formula(t, u, s, RecApp(t, u, s), p["beta"], p["z"])


def _recax_conditions(p):
    pieces = (p["t"], p["u"], p["s"])
    return [
        ("beta does not occur in t, u, s", not any(p["beta"] in all_vars(e) for e in pieces)),
        ("z does not occur free in u", not _occurs_free(p["z"], p["u"])),
    ]


def _recax_destructure(f):
    parts = match_a_formula(f)
    if parts is None:
        return None
    return {"t": parts.t, "u": parts.u, "s": parts.s, "beta": parts.beta, "z": parts.z}


# -- AC00!, QF-AC00, QFt-AC00 ------------------------------------------------

def _choice_defaults(p):
    return {"alpha": FunVar("alpha")}


def _ac_conclusion(p):
    x, y, alpha = p["x"], p["y"], p["alpha"]
    return ExistsFun(alpha, ForallNum(x, substitute(p["A"], y, Apply(alpha, x))))


def _ac_bang_build(p):
    return Implies(ForallNum(p["x"], exists_unique(p["y"], p["A"])), _ac_conclusion(p))


def _ac_common_conditions(p, bang: bool):
    A, x, y, alpha = p["A"], p["x"], p["y"], p["alpha"]
    out = [("x and y are distinct", x != y)]
    if bang:
        out += [
            ("x is free for y in A(x,y)", is_free_for(x, y, A)),
            ("alpha is free for y in A(x,y)", is_free_for(alpha, y, A)),
            ("alpha does not occur free in A(x,y)", not _occurs_free(alpha, A)),
        ]
    else:
        out += [
            ("A(x,y) is quantifier-free", _quantifier_free(A)),
            ("x is free for y in A(x,y)", is_free_for(Apply(alpha, x), y, A)),
            ("alpha does not occur in A(x,y)", alpha not in all_vars(A)),
        ]
    return out


def _ac_destructure(f, bang: bool):
    if not (
        isinstance(f, Implies)
        and isinstance(f.left, ForallNum)
        and isinstance(f.right, ExistsFun)
    ):
        return None
    x, ex = f.left.var, f.left.body
    if not isinstance(ex, ExistsNum):
        return None
    y = ex.var
    if bang:
        if not isinstance(ex.body, And):
            return None
        A = ex.body.left
    else:
        A = ex.body
    return {"A": A, "x": x, "y": y, "alpha": f.right.var}


def _qf_build(p):
    return Implies(ForallNum(p["x"], ExistsNum(p["y"], p["A"])), _ac_conclusion(p))


def _qft_build(p):
    t, w, x, y, alpha = p["t"], p["w"], p["x"], p["y"], p["alpha"]
    hyp = ForallNum(x, ExistsNum(y, Eq(substitute(t, w, _pair(x, y)), ZERO)))
    concl = ExistsFun(alpha, ForallNum(x, Eq(substitute(t, w, _pair(x, Apply(alpha, x))), ZERO)))
    return Implies(hyp, concl)


def _qft_conditions(p):
    t, w, x, y, alpha = p["t"], p["w"], p["x"], p["y"], p["alpha"]
    return [
        ("w, x, y are distinct", len({w, x, y}) == 3),
        ("y does not occur free in t(w)", not _occurs_free(y, t)),
        ("<x,y> is free for w in t(w)", is_free_for(_pair(x, y), w, t)),
        ("<x,alpha(x)> is free for w in t(w)", is_free_for(_pair(x, Apply(alpha, x)), w, t)),
        ("alpha does not occur in t(w)", alpha not in all_vars(t)),
    ]


def _qft_destructure(f):
    try:
        x = f.left.var
        y = f.left.body.var
        alpha = f.right.var
        lhs_h = f.left.body.body.lhs
        lhs_c = f.right.body.body.lhs
        if f.right.body.var != x:
            return None
    except AttributeError:
        return None
    w = fresh_num("w", all_vars(f))
    t = anti_unify(lhs_h, lhs_c, _pair(x, y), _pair(x, Apply(alpha, x)), w)
    if t is None:
        return None
    return {"t": t, "w": w, "x": x, "y": y, "alpha": alpha}


# -- CF_d ----------------------------------------------------------------------

def _cfd_defaults(p):
    return {"beta": FunVar("beta")}


def _cfd_build(p):
    B, x, beta = p["B"], p["x"], p["beta"]
    bx = Apply(beta, x)
    return Implies(
        ForallNum(x, Or(B, Not(B))),
        ExistsFun(beta, ForallNum(x, And(le(bx, numeral(1)), iff(Eq(bx, ZERO), B)))),
    )


def _cfd_conditions(p):
    return [("beta does not occur free in B(x)", not _occurs_free(p["beta"], p["B"]))]


def _cfd_destructure(f):
    if isinstance(f, Implies) and isinstance(f.left, ForallNum) and isinstance(f.left.body, Or):
        if isinstance(f.right, ExistsFun):
            return {"B": f.left.body.left, "x": f.left.var, "beta": f.right.var}
    return None


# -- REFL / REPL -------------------------------------------------------------

def _rr_build(p):
    x = p["x"]
    if "A" not in p:
        return Eq(x, x)
    A, z, y = p["A"], p["z"], p["y"]
    return Implies(And(substitute(A, z, x), Eq(x, y)), substitute(A, z, y))


def _rr_conditions(p):
    if "A" not in p:
        return []
    A, z, x, y = p["A"], p["z"], p["x"], p["y"]
    return [
        ("x and y are distinct", x != y),
        ("x is free for z in A(z)", is_free_for(x, z, A)),
        ("y is free for z in A(z)", is_free_for(y, z, A)),
    ]


def _rr_destructure(f):
    if isinstance(f, Eq) and isinstance(f.lhs, NumVar):
        return {"x": f.lhs}
    if not (isinstance(f, Implies) and isinstance(f.left, And) and isinstance(f.left.right, Eq)):
        return None
    x, y = f.left.right.lhs, f.left.right.rhs
    if not (isinstance(x, NumVar) and isinstance(y, NumVar)) or x == y:
        return None
    z = fresh_num("z", all_vars(f))
    A = anti_unify(f.left.left, f.right, x, y, z)
    if A is None:
        return None
    return {"A": A, "z": z, "x": x, "y": y}


# -- function-variable equality ----------------------------------------------

def _fve_build(p):
    x, y, alpha = p["x"], p["y"], p["alpha"]
    return Implies(Eq(x, y), Eq(Apply(alpha, x), Apply(alpha, y)))


def _fve_destructure(f):
    if isinstance(f, Implies) and isinstance(f.left, Eq) and isinstance(f.right, Eq):
        if isinstance(f.right.lhs, Apply):
            return {"x": f.left.lhs, "y": f.left.rhs, "alpha": f.right.lhs.functor}
    return None


# -- BIM / H / WKV -----------------------------------------------------------

def _bim_defaults(p):
    return {
        "alpha": FunVar("alpha"),
        "beta": FunVar("beta"),
        "gamma": FunVar("gamma"),
        "m": NumVar("m"),
        "n": NumVar("n"),
        "k": NumVar("k"),
        "lt": "monus",
    }


def _bim_lt(p, a: Term, b: Term) -> Formula:
    if p.get("lt", "monus") == "monus":
        return lt(a, b)
    k = p["k"]
    return ExistsNum(k, Eq(ConstApp("add", (succ(k), a)), b))


def _search_hyp(p):
    alpha, m, n = p["alpha"], p["m"], p["n"]
    return ForallNum(m, ExistsNum(n, Eq(_app2(alpha, m, n), ZERO)))


def _us_build(p):
    alpha, gamma, m, n = p["alpha"], p["gamma"], p["m"], p["n"]
    gm = Apply(gamma, m)
    minimal = ForallNum(n, Implies(_bim_lt(p, n, gm), _neq(_app2(alpha, m, n), ZERO)))
    body = ExistsFun(gamma, ForallNum(m, And(Eq(_app2(alpha, m, gm), ZERO), minimal)))
    return ForallFun(alpha, Implies(_search_hyp(p), body))


def _mcc_build(p):
    alpha, gamma, m = p["alpha"], p["gamma"], p["m"]
    body = ExistsFun(gamma, ForallNum(m, Eq(_app2(alpha, m, Apply(gamma, m)), ZERO)))
    return ForallFun(alpha, Implies(_search_hyp(p), body))


def _bimpr_build(p):
    alpha, beta, gamma, m, n = p["alpha"], p["beta"], p["gamma"], p["m"], p["n"]
    eqs = And(
        Eq(_app2(gamma, m, ZERO), Apply(alpha, m)),
        Eq(_app2(gamma, m, succ(n)), _app3(beta, m, n, _app2(gamma, m, n))),
    )
    return ForallFun(alpha, ForallFun(beta, ExistsFun(gamma, ForallNum(m, ForallNum(n, eqs)))))


def _distinct(p, names) -> Conditions:
    vals = [p[k] for k in names]
    return [(f"{', '.join(names)} are distinct", len(set(vals)) == len(vals))]


def _binders_in_order(f: Formula) -> tuple[list[FunVar], list[NumVar]]:
    funs: list = []
    nums: list = []
    stack = [f]
    while stack:
        e = stack.pop()
        b = binder(e)
        if isinstance(b, FunVar) and b not in funs:
            funs.append(b)
        elif isinstance(b, NumVar) and b not in nums:
            nums.append(b)
        stack.extend(reversed(children(e)))
    return funs, nums


def _closed_destructure(funs: tuple[str, ...], nums: tuple[str, ...], with_lt: bool = False):
    """Closed axioms: read the bound variables off the formula in order of
    first binding; a third number binder signals the additive ``<``."""

    def destructure(f):
        seen_f, seen_n = _binders_in_order(f)
        if len(seen_f) < len(funs) or len(seen_n) < len(nums):
            return None
        out: dict = dict(zip(funs, seen_f))
        out.update(zip(nums, seen_n))
        if with_lt:
            extra = seen_n[len(nums):]
            out["lt"] = "exists" if extra else "monus"
            if extra:
                out["k"] = extra[0]
        return out

    return destructure


def _wkv_defaults(p):
    used = frozenset().union(*(all_vars(p[k]) for k in ("t", "r") if k in p))
    return {"beta": fresh_fun("beta", used), "y": fresh_num("y", used)}


def _wkv_build(p):
    t, r, beta, y = p["t"], p["r"], p["beta"], p["y"]
    step = Eq(Apply(beta, succ(y)), Apply(r, ConstApp("j", (y, Apply(beta, y)))))
    return ExistsFun(beta, And(Eq(Apply(beta, ZERO), t), ForallNum(y, step)))


def _wkv_conditions(p):
    t, r, beta, y = p["t"], p["r"], p["beta"], p["y"]
    return [
        ("beta does not occur in t or r", beta not in all_vars(t) and beta not in all_vars(r)),
        ("y does not occur free in r", not _occurs_free(y, r)),
    ]


def _wkv_destructure(f):
    try:
        beta = f.var
        t = f.body.left.rhs
        loop = f.body.right
        return {"t": t, "r": loop.body.rhs.functor, "beta": beta, "y": loop.var}
    except AttributeError:
        return None


def _none(p) -> Conditions:
    return []


SCHEMATA: dict[SchemaId, _Schema] = {
    SchemaId.IND: _Schema({"A": "formula", "x": "numvar"}, _ind_build, _none, _ind_destructure),
    SchemaId.LambdaConv: _Schema(
        {"t": "term", "x": "numvar", "s": "term"}, _lc_build, _lc_conditions, _lc_destructure
    ),
    SchemaId.REC: _Schema(
        {"t": "term", "u": "functor", "s": "term"}, _rec_build, _none, _rec_destructure
    ),
    SchemaId.RecAxiom: _Schema(
        {"t": "term", "u": "functor", "s": "term", "beta": "funvar", "z": "numvar"},
        _recax_build,
        _recax_conditions,
        _recax_destructure,
        _recax_defaults,
    ),
    SchemaId.AC00Bang: _Schema(
        {"A": "formula", "x": "numvar", "y": "numvar", "alpha": "funvar"},
        _ac_bang_build,
        lambda p: _ac_common_conditions(p, True),
        lambda f: _ac_destructure(f, True),
        _choice_defaults,
    ),
    SchemaId.QFAC00: _Schema(
        {"A": "formula", "x": "numvar", "y": "numvar", "alpha": "funvar"},
        _qf_build,
        lambda p: _ac_common_conditions(p, False),
        lambda f: _ac_destructure(f, False),
        _choice_defaults,
    ),
    SchemaId.QFtAC00: _Schema(
        {"t": "term", "w": "numvar", "x": "numvar", "y": "numvar", "alpha": "funvar"},
        _qft_build,
        _qft_conditions,
        _qft_destructure,
        _choice_defaults,
    ),
    SchemaId.CFd: _Schema(
        {"B": "formula", "x": "numvar", "beta": "funvar"},
        _cfd_build,
        _cfd_conditions,
        _cfd_destructure,
        _cfd_defaults,
    ),
    SchemaId.ReflRepl: _Schema(
        {"A": "formula", "z": "numvar", "x": "numvar", "y": "numvar"},
        _rr_build,
        _rr_conditions,
        _rr_destructure,
    ),
    SchemaId.FunVarEq: _Schema(
        {"x": "term", "y": "term", "alpha": "functor"}, _fve_build, _none, _fve_destructure
    ),
    SchemaId.UnboundedSearch: _Schema(
        {"alpha": "funvar", "gamma": "funvar", "m": "numvar", "n": "numvar", "k": "numvar", "lt": "str"},
        _us_build,
        lambda p: _distinct(p, ("alpha", "gamma"))
        + _distinct(p, ("m", "n", "k") if p.get("lt") == "exists" else ("m", "n")),
        _closed_destructure(("alpha", "gamma"), ("m", "n"), True),
        _bim_defaults,
    ),
    SchemaId.MinimalCountableChoice: _Schema(
        {"alpha": "funvar", "gamma": "funvar", "m": "numvar", "n": "numvar"},
        _mcc_build,
        lambda p: _distinct(p, ("alpha", "gamma")) + _distinct(p, ("m", "n")),
        _closed_destructure(("alpha", "gamma"), ("m", "n")),
        _bim_defaults,
    ),
    SchemaId.BIMPrimRec: _Schema(
        {"alpha": "funvar", "beta": "funvar", "gamma": "funvar", "m": "numvar", "n": "numvar"},
        _bimpr_build,
        lambda p: _distinct(p, ("alpha", "beta", "gamma")) + _distinct(p, ("m", "n")),
        _closed_destructure(("alpha", "beta", "gamma"), ("m", "n")),
        _bim_defaults,
    ),
    SchemaId.WKVPrimRec: _Schema(
        {"t": "term", "r": "functor", "beta": "funvar", "y": "numvar"},
        _wkv_build,
        _wkv_conditions,
        _wkv_destructure,
        _wkv_defaults,
    ),
}


def piece_kinds(schema: SchemaId) -> Mapping[str, str]:
    return MappingProxyType(dict(SCHEMATA[SchemaId(schema)].kinds))


def _complete(schema: SchemaId, pieces: Pieces) -> dict:
    sd = SCHEMATA[schema]
    p = dict(pieces)
    for k, v in sd.defaults(p).items():
        p.setdefault(k, v)
    if schema is SchemaId.ReflRepl and "A" not in p:
        required = ("x",)
    elif schema is SchemaId.UnboundedSearch and p.get("lt") != "exists":
        required = ("alpha", "gamma", "m", "n")
    else:
        required = tuple(k for k in sd.kinds if k != "lt")
    missing = [k for k in required if k not in p]
    if missing:
        raise InputError(f"{schema.value}: missing pieces {', '.join(missing)}")
    return p


def instance(schema: SchemaId | str, pieces: Pieces) -> SchemaInstance:
    """Build the instance and record every side condition, without raising."""
    schema = SchemaId(schema)
    p = _complete(schema, pieces)
    sd = SCHEMATA[schema]
    conds = tuple(sd.conditions(p))
    return SchemaInstance(schema, p, conds, sd.build(p))


def instantiate(schema: SchemaId | str, pieces: Pieces) -> Formula:
    """The axiom formula for ``pieces``; raises :class:`SchemaError` naming
    the first failing side condition."""
    inst = instance(schema, pieces)
    for name, ok in inst.side_conditions:
        if not ok:
            raise SchemaError(name, "side condition failed")
    return inst.formula


def match(f: Formula, schema: SchemaId | str) -> SchemaInstance | None:
    """An instance of ``schema`` congruent to ``f``, or ``None``."""
    schema = SchemaId(schema)
    try:
        pieces = SCHEMATA[schema].destructure(f)
        if pieces is None:
            return None
        inst = instance(schema, pieces)
    except (InputError, TypeError, KeyError):
        return None
    if not inst.valid or not congruent(inst.formula, f):
        return None
    return inst


def match_any(f: Formula, schemata=tuple(SchemaId)) -> list[SchemaInstance]:
    return [m for s in schemata if (m := match(f, s)) is not None]
