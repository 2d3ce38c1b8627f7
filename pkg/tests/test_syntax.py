import pytest
from hypothesis import given, strategies as st

from twosorted.errors import InputError, ParseError, SortError, SyntaxConditionError
from twosorted.syntax.ops import binder, subexpressions
from twosorted.syntax import (
    Apply,
    ConstApp,
    Eq,
    ForallNum,
    FunVar,
    Lambda,
    NumVar,
    all_vars,
    congruent,
    dumps,
    free_vars,
    from_json,
    is_free_for,
    loads,
    numeral,
    numeral_value,
    parse,
    parse_formula,
    parse_functor,
    parse_term,
    substitute,
    superscript_w,
    to_text,
)

from .strategies import formulas, funvars, numvars, terms

x, y, z, w = NumVar("x"), NumVar("y"), NumVar("z"), NumVar("w")
alpha, beta = FunVar("alpha"), FunVar("beta")


def P(s):
    return parse(s)


class TestFreeVars:
    def test_sum(self):
        assert free_vars(P("x + y")) == ({x, y}, set())

    def test_lambda_binds(self):
        assert free_vars(P("lam x. x + y")) == ({y}, set())

    def test_function_quantifier(self):
        assert free_vars(P("exists beta. beta(0) = alpha(z)")) == ({z}, {alpha})

    def test_rec_step_lambda(self):
        nums, funs = free_vars(P("rec(x; lam w. expof(w, 0) + y; z)"))
        assert nums == {x, y, z} and not funs


class TestSubstitute:
    def test_numeral(self):
        assert substitute(P("x + y"), x, numeral(3)) == P("3 + y")
        assert to_text(substitute(P("x + y"), x, numeral(3))) == "3 + y"

    def test_capture_renames(self):
        out = substitute(P("lam x. x + y"), y, x)
        assert out == Lambda(NumVar("x", 1), P("x1 + x"))

    def test_functor_for_funvar(self):
        out = substitute(P("alpha(z)"), alpha, P("lam x. x * x"))
        assert out == Apply(P("lam x. x * x"), z)

    def test_sort_mismatch(self):
        with pytest.raises(SortError):
            substitute(P("x + y"), x, P("sg"))
        with pytest.raises(SortError):
            substitute(P("alpha(x)"), alpha, numeral(1))

    @given(terms, numvars, terms)
    def test_removes_target(self, t, v, s):
        out = substitute(t, v, s)
        if v not in free_vars(s)[0]:
            assert v not in free_vars(out)[0]

    @given(formulas, numvars, terms)
    def test_free_vars_law(self, f, v, s):
        out = substitute(f, v, s)
        expected = free_vars(f)[0] - {v}
        if v in free_vars(f)[0]:
            expected |= free_vars(s)[0]
        assert free_vars(out)[0] == expected

    @given(formulas, numvars)
    def test_identity(self, f, v):
        assert substitute(f, v, v) == f or congruent(substitute(f, v, v), f)


class TestFreeFor:
    def test_captured(self):
        assert not is_free_for(x, y, P("forall x. x = y"))

    def test_closed(self):
        assert is_free_for(numeral(3), y, P("forall x. x = y"))

    def test_funvar_captured(self):
        assert not is_free_for(alpha, beta, P("exists alpha. alpha(0) = beta(0)"))

    @given(formulas, numvars, terms)
    def test_free_for_means_no_renaming(self, f, v, s):
        if is_free_for(s, v, f):
            assert _binders(substitute(f, v, s)) <= _binders(f) | _binders(s)


def _binders(e):
    return {b for _, n in subexpressions(e) if (b := binder(n)) is not None}


class TestCongruent:
    def test_examples(self):
        assert congruent(P("forall x. x = x"), P("forall y. y = y"))
        assert congruent(P("lam x. x"), P("lam y. y"))
        assert not congruent(P("forall x. x = z"), P("forall x. x = w"))

    def test_sorts_respected(self):
        assert not congruent(P("exists alpha. alpha(0) = 0"), P("exists x. x = 0"))

    @given(formulas)
    def test_renaming_bound(self, f):
        if isinstance(f, ForallNum):
            fresh = NumVar("v", 7)
            renamed = ForallNum(fresh, substitute(f.body, f.var, fresh))
            if fresh not in all_vars(f):
                assert congruent(f, renamed)


class TestSuperscript:
    def test_pair(self):
        assert superscript_w(P("x + y"), w, [x, y]) == P("expof(w, 0) + expof(w, 1)")

    def test_closed(self):
        assert superscript_w(numeral(0), w, []) == numeral(0)

    def test_funvar_untouched(self):
        assert superscript_w(P("alpha(x)"), w, [x]) == P("alpha(expof(w, 0))")

    def test_conditions(self):
        with pytest.raises(SyntaxConditionError):
            superscript_w(P("x + w"), w, [x])
        with pytest.raises(SyntaxConditionError):
            superscript_w(P("x + y"), w, [x])


class TestText:
    @given(terms)
    def test_term_roundtrip(self, t):
        assert parse_term(to_text(t)) == t

    @given(formulas)
    def test_formula_roundtrip(self, f):
        assert parse_formula(to_text(f)) == f

    @given(formulas)
    def test_json_roundtrip(self, f):
        assert loads(dumps(f)) == f

    @pytest.mark.parametrize(
        "text, printed",
        [
            ("x < y", "x < y"),
            ("x <= y", "x <= y"),
            ("x | y", "x | y"),
            ("x = y <-> y = x", "x = y <-> y = x"),
            ("0'''", "3"),
            ("add(x, mul(y, z))", "x + y * z"),
            ("(x + y) * z", "(x + y) * z"),
        ],
    )
    def test_canonical_forms(self, text, printed):
        assert to_text(parse(text)) == printed

    def test_lt_core_form(self):
        assert parse_formula("x < y") == Eq(ConstApp("monus", (P("x'"), y)), numeral(0))

    def test_numerals(self):
        assert numeral_value(parse_term("5")) == 5
        assert numeral_value(parse_term("x")) is None

    def test_sorts(self):
        assert isinstance(parse_functor("sg"), type(P("sg")))
        with pytest.raises(ParseError):
            parse_term("lam x. x")
        with pytest.raises(ParseError):
            parse_functor("x + 1")

    @pytest.mark.parametrize(
        "bad", ["x +", "forall . x = x", "rec(1; sg)", "add(x)", "lam j. j", "(x = y", "x $ y"]
    )
    def test_errors_are_input_errors(self, bad):
        with pytest.raises(InputError):
            parse(bad)

    def test_error_offset(self):
        with pytest.raises(ParseError) as exc:
            parse("x = y +")
        assert exc.value.pos is not None

    def test_json_malformed(self):
        with pytest.raises(InputError):
            from_json({"tag": "Nope"})
        with pytest.raises(InputError):
            loads("{")
        with pytest.raises(InputError):
            from_json({"tag": "Eq", "lhs": {"tag": "NumVarRef"}})

    @given(funvars)
    def test_funvar_text(self, f):
        assert parse_functor(to_text(f)) == f
