"""Recursive-descent parser for the ASCII syntax.

Grammar sketch (loosest binding first)::

    formula  := or ('->' formula | '<->' formula)?
    or       := and ('\\/' and)*
    and      := unary ('&' unary)*
    unary    := '~' unary | quant | '(' formula ')' | expr relop expr
    quant    := ('forall' | 'exists' | 'exists!') var '.' formula
    relop    := '=' | '<' | '<=' | '|'
    expr     := mul ('+' mul)*
    mul      := post ('*' post)*
    post     := primary ("'" | '(' expr ')')*
    primary  := NUMBER | var | const '(' args ')' | const
              | 'lam' numvar '.' expr | 'rec' '(' expr ';' expr ';' expr ')'
              | '(' expr ')'

Function variables are written ``'name`` or drawn from ``funvars``
(Greek letter names by default).  ``<``, ``<=``, ``|``, ``<->``,
``exists!`` and equality between functors are expanded on the spot, so
the AST only ever holds core forms.
"""

from __future__ import annotations

import re
from typing import Mapping

from ..errors import InputError, ParseError
from .ast import (
    DEFAULT_FUNVAR_NAMES,
    ZERO,
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
    divides,
    iff,
    le,
    lt,
    numeral,
    succ,
)
from .ops import all_vars, free_vars, fresh_num, substitute
from .signature import BASE_SIGNATURE, ConstSig

_UNICODE = {
    "∀": "forall ", "∃": "exists ", "λ": "lam ", "¬": "~", "∧": "&", "∨": "\\/",
    "→": "->", "↔": "<->", "≤": "<=", "·": "*", "′": "'",
}

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*!?)
  | (?P<op><->|->|<=|\\/|[()\[\],;.'+*=<|&~])
    """,
    re.VERBOSE,
)

_RELOPS = ("=", "<", "<=", "|")
_TERM_CONTINUATION = set(_RELOPS) | {"+", "*", "'", "("}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    for k, v in _UNICODE.items():
        text = text.replace(k, v)
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            val = m.group()
            if kind == "op" and val in "[]":
                val = "(" if val == "[" else ")"
            out.append((kind, val, pos))
        pos = m.end()
    out.append(("eof", "", pos))
    return out


# Numerals are unary succ-chains, so literals are kept to a modest size.
MAX_LITERAL = 100_000


def split_ident(ident: str) -> tuple[str, int]:
    m = re.match(r"([A-Za-z_]+?)(\d*)\Z", ident)
    if not m:
        raise ValueError(f"not a variable name (letters, then an optional index): {ident!r}")
    name, digits = m.groups()
    return name, int(digits) if digits else 0


class _Parser:
    def __init__(self, text: str, funvars, table: Mapping[str, ConstSig]):
        self.toks = _tokenize(text)
        self.i = 0
        self.funvars = frozenset(funvars)
        self.table = table

    # token helpers
    def peek(self, k: int = 0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def at(self, val: str) -> bool:
        kind, v, _ = self.peek()
        return kind != "eof" and v == val

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, val: str):
        kind, v, pos = self.peek()
        if v != val or kind == "eof":
            raise ParseError(f"expected {val!r}, found {v or 'end of input'!r}", pos)
        return self.take()

    def fail(self, msg: str):
        raise ParseError(msg, self.peek()[2])

    # variables
    def _var_from_ident(self, ident: str) -> NumVar | FunVar:
        try:
            name, idx = split_ident(ident)
            if name in self.funvars:
                return FunVar(name, idx)
            return NumVar(name, idx)
        except ValueError as e:
            self.fail(str(e))

    def parse_binder_var(self) -> NumVar | FunVar:
        if self.at("'"):
            self.take()
            kind, v, pos = self.take()
            if kind != "ident":
                raise ParseError("function variable name expected after \"'\"", pos)
            try:
                name, idx = split_ident(v)
                return FunVar(name, idx)
            except ValueError as e:
                raise ParseError(str(e), pos) from None
        kind, v, pos = self.take()
        if kind != "ident" or v in self.table or v in ("forall", "exists", "lam", "rec"):
            raise ParseError(f"variable expected, found {v!r}", pos)
        return self._var_from_ident(v)

    # formulas
    def formula(self) -> Formula:
        left = self.disj()
        if self.at("->"):
            self.take()
            return Implies(left, self.formula())
        if self.at("<->"):
            self.take()
            return iff(left, self.formula())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.at("\\/"):
            self.take()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, v, pos = self.peek()
        if v == "~" and kind == "op":
            self.take()
            return Not(self.unary())
        if kind == "ident" and v in ("forall", "exists", "exists!"):
            self.take()
            var = self.parse_binder_var()
            self.expect(".")
            body = self.formula()
            if v == "forall":
                return (ForallNum if isinstance(var, NumVar) else ForallFun)(var, body)
            if v == "exists":
                return (ExistsNum if isinstance(var, NumVar) else ExistsFun)(var, body)
            if not isinstance(var, NumVar):
                raise ParseError("exists! binds a number variable", pos)
            return exists_unique(var, body)
        if v == "(" and kind == "op":
            save = self.i
            try:
                self.take()
                f = self.formula()
                self.expect(")")
                if self.peek()[1] not in _TERM_CONTINUATION or self.peek()[0] == "eof":
                    return f
            except InputError:
                pass
            self.i = save
        return self.comparison()

    def comparison(self) -> Formula:
        _, _, pos = self.peek()
        left = self.expr()
        kind, op, opos = self.peek()
        if op not in _RELOPS or kind == "eof":
            raise ParseError("comparison expected", opos)
        self.take()
        right = self.expr()
        if isinstance(left, Functor) or isinstance(right, Functor):
            if op != "=" or not (isinstance(left, Functor) and isinstance(right, Functor)):
                raise ParseError("only '=' relates two functors", opos)
            return functor_equality(left, right)
        if op == "=":
            return Eq(left, right)
        if op == "<":
            return lt(left, right)
        if op == "<=":
            return le(left, right)
        return divides(left, right)

    # terms and functors
    def expr(self) -> Term | Functor:
        e = self.product()
        while self.at("+"):
            self.take()
            e = ConstApp("add", (self._as_term(e), self._as_term(self.product())))
        return e

    def product(self) -> Term | Functor:
        e = self.postfix()
        while self.at("*"):
            self.take()
            e = ConstApp("mul", (self._as_term(e), self._as_term(self.postfix())))
        return e

    def postfix(self) -> Term | Functor:
        e = self.primary()
        while True:
            if self.at("'"):
                self.take()
                e = succ(self._as_term(e))
            elif self.at("(") and isinstance(e, Functor):
                self.take()
                arg = self._as_term(self.expr())
                self.expect(")")
                e = Apply(e, arg)
            else:
                return e

    def primary(self) -> Term | Functor:
        kind, v, pos = self.peek()
        if kind == "num":
            if len(v) > 6 or int(v) > MAX_LITERAL:
                self.fail(f"numeral {v} exceeds {MAX_LITERAL}; numerals are unary succ-chains")
            self.take()
            return numeral(int(v))
        if v == "'" and kind == "op":
            var = self.parse_binder_var()
            return var
        if v == "(" and kind == "op":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if kind != "ident":
            raise ParseError(f"term expected, found {v or 'end of input'!r}", pos)
        if v == "lam":
            self.take()
            var = self.parse_binder_var()
            if not isinstance(var, NumVar):
                raise ParseError("lam binds a number variable", pos)
            self.expect(".")
            return Lambda(var, self._as_term(self.expr()))
        if v == "rec":
            self.take()
            self.expect("(")
            base = self._as_term(self.expr())
            self.expect(";")
            step = self._as_functor(self.expr())
            self.expect(";")
            arg = self._as_term(self.expr())
            self.expect(")")
            return RecApp(base, step, arg)
        if v in ("forall", "exists", "exists!"):
            raise ParseError("quantifier inside a term", pos)
        sig = self.table.get(v)
        if sig is not None:
            self.take()
            if self.at("("):
                return self._const_args(sig)
            if sig.k == 0 and sig.l == 0:
                return ZERO if sig.name == "zero" else ConstApp(sig.name)
            if sig.is_unary:
                return UnaryConst(sig.name)
            raise ParseError(f"{v} needs arguments", pos)
        self.take()
        return self._var_from_ident(v)

    def _const_args(self, sig: ConstSig) -> ConstApp:
        self.expect("(")
        args: list = []
        if not self.at(")"):
            args.append(self.expr())
            while self.at(","):
                self.take()
                args.append(self.expr())
        self.expect(")")
        if len(args) != sig.k + sig.l:
            self.fail(f"{sig.name} takes {sig.k + sig.l} arguments, got {len(args)}")
        nums = tuple(self._as_term(a) for a in args[: sig.k])
        funs = tuple(self._as_functor(a) for a in args[sig.k:])
        return ConstApp(sig.name, nums, funs)

    def _as_term(self, e) -> Term:
        if not isinstance(e, Term):
            self.fail("term expected where a functor was given")
        return e

    def _as_functor(self, e) -> Functor:
        if not isinstance(e, Functor):
            self.fail("functor expected where a term was given")
        return e

    def done(self):
        kind, v, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {v!r}", pos)


def exists_unique(y: NumVar, body: Formula) -> Formula:
    """``exists! y B(y)`` as ``exists y [B(y) & forall z (B(z) -> y = z)]``."""
    z = fresh_num("z", all_vars(body) | {y})
    return ExistsNum(y, And(body, ForallNum(z, Implies(substitute(body, y, z), Eq(y, z)))))


def functor_equality(u: Functor, v: Functor) -> Formula:
    """``u = v`` as ``forall x u(x) = v(x)`` with ``x`` free in neither."""
    x = fresh_num("x", free_vars(u)[0] | free_vars(v)[0])
    return ForallNum(x, Eq(Apply(u, x), Apply(v, x)))


def _run(text: str, what: str, funvars, table):
    p = _Parser(text, funvars, table if table is not None else BASE_SIGNATURE)
    try:
        if what == "formula":
            out = p.formula()
        else:
            out = p.expr()
        p.done()
    except ParseError:
        raise
    except InputError as e:
        raise ParseError(str(e), p.peek()[2]) from None
    return out


def parse_formula(text: str, funvars=DEFAULT_FUNVAR_NAMES, table=None) -> Formula:
    return _run(text, "formula", funvars, table)


def parse_term(text: str, funvars=DEFAULT_FUNVAR_NAMES, table=None) -> Term:
    e = _run(text, "expr", funvars, table)
    if not isinstance(e, Term):
        raise ParseError("term expected, got a functor")
    return e


def parse_functor(text: str, funvars=DEFAULT_FUNVAR_NAMES, table=None) -> Functor:
    e = _run(text, "expr", funvars, table)
    if not isinstance(e, Functor):
        raise ParseError("functor expected, got a term")
    return e


def parse(text: str, funvars=DEFAULT_FUNVAR_NAMES, table=None) -> Expr:
    """Parse a formula, term or functor, whichever the text is."""
    try:
        return parse_formula(text, funvars, table)
    except ParseError as formula_err:
        try:
            return _run(text, "expr", funvars, table)
        except ParseError as expr_err:
            raise max(formula_err, expr_err, key=lambda e: e.pos or 0) from None
