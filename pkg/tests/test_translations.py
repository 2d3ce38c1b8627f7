import itertools

import pytest
from hypothesis import given

from twosorted import translations
from twosorted.errors import UndecidableFormulaError
from twosorted.generators import lambda_prime, plain_prime, rec_prime
from twosorted.kernel import FUNCTOR_POOL, Environment
from twosorted.syntax import (
    And,
    Apply,
    Eq,
    ExistsFun,
    ForallNum,
    FunVar,
    NumVar,
    RecApp,
    component_term,
    congruent,
    free_vars,
    has_lambda,
    has_rec,
    numeral,
    parse_formula,
    parse_functor,
    parse_term,
    seq_code_term,
    succ,
    to_text,
)
from twosorted.translations import (
    a_formula,
    check_lambda_equiv,
    check_rec_equiv,
    find_outer_lambda,
    find_rec_plain,
    lambda_eliminate,
    match_a_formula,
    rec_eliminate,
)

from .strategies import gens

x, y, z, w = NumVar("x"), NumVar("y"), NumVar("z"), NumVar("w")
alpha, beta, gamma = FunVar("alpha"), FunVar("beta"), FunVar("gamma")
F = parse_formula
ENV = Environment({alpha: FUNCTOR_POOL[2]})


class TestRecEliminate:
    def test_rec_free_unchanged(self):
        f = F("forall x. exists alpha. alpha(x) = x + 1")
        assert rec_eliminate(f) is f or rec_eliminate(f) == f

    def test_single_occurrence(self):
        got = rec_eliminate(F("rec(0; alpha; y) = z"))
        loop = ForallNum(w, a_formula(numeral(0), alpha, component_term(w, 0), Apply(gamma, w), beta, NumVar("z", 1)))
        want = ExistsFun(gamma, And(loop, Eq(Apply(gamma, seq_code_term([y])), z)))
        assert congruent(got, want)

    def test_rec_plain_is_innermost(self):
        e = F("rec(rec(0; sg; x); sg; y) = 0")
        occ = find_rec_plain(e)
        assert occ.term == parse_term("rec(0; sg; x)")
        assert tuple(occ.ordering) == (x,)

    def test_a_formula_roundtrip(self):
        f = a_formula(numeral(1), parse_functor("sg"), x, y, beta, z)
        parts = match_a_formula(f)
        assert (parts.t, parts.s, parts.v, parts.beta, parts.z) == (numeral(1), x, y, beta, z)

    @given(gens)
    def test_syntactic_properties(self, g):
        f = g.formula((x, y), 3, lambda ns: rec_prime(g, ns, (alpha,)))
        out = rec_eliminate(f)
        assert not has_rec(out)
        assert free_vars(out) == free_vars(f)
        assert rec_eliminate(out) == out

    @given(gens)
    def test_commutes(self, g):
        a = rec_prime(g, (x,), (alpha,))
        b = g.formula((x, y), 2, lambda ns: rec_prime(g, ns))
        for build in (And, lambda p, q: ExistsFun(beta, p), lambda p, q: ForallNum(x, p)):
            assert rec_eliminate(build(a, b)) == build(rec_eliminate(a), rec_eliminate(b))


class TestRecCheck:
    def test_examples(self):
        assert check_rec_equiv(F("rec(5; lam w. expof(w, 0) + expof(w, 1); 3) = 8"))
        assert check_rec_equiv(F("rec(0; lam w. expof(w, 0); 0) = 1"))

    def test_open_formula(self):
        f = F("rec(x; lam w. expof(w, 0) + y; y) = x + y * y")
        for a, b in itertools.product(range(5), repeat=2):
            assert check_rec_equiv(f, asg={x: a, y: b})

    def test_bounded_context(self):
        f = F("forall i. i < x -> rec(alpha(i); lam w. expof(w, 0)'; x) = i + x' \\/ x = 0")
        for a in range(5):
            assert check_rec_equiv(f, ENV, {x: a})

    def test_rec_under_capturing_lambda(self):
        f = F("sum(3, lam i. rec(i; lam w. expof(w, 0) + 1; i)) = 6")
        assert check_rec_equiv(f)

    def test_undecidable_rejected(self):
        with pytest.raises(UndecidableFormulaError):
            check_rec_equiv(F("exists x. rec(0; sg; x) = 0"))

    @given(gens)
    def test_generated(self, g):
        f = rec_prime(g, (x,), (alpha,), nested=False)
        for a in range(4):
            assert check_rec_equiv(f, ENV, {x: a})

    def test_detects_wrong_output(self, monkeypatch):
        real = translations.rec_eliminate

        def off_by_one(f):
            g = real(f)
            rest = g.body.right
            return ExistsFun(g.var, And(g.body.left, Eq(rest.lhs, succ(rest.rhs))))

        monkeypatch.setattr(translations, "rec_eliminate", off_by_one)
        assert not check_rec_equiv(F("rec(5; lam w. expof(w, 0) + expof(w, 1); 3) = 8"))

    def test_detects_wrong_a_formula(self, monkeypatch):
        real = translations.rec_eliminate

        def wrong_base(f):
            g = real(f)
            loop = g.body.left
            p = match_a_formula(loop.body)
            bad = a_formula(succ(p.t), p.u, p.s, p.v, p.beta, p.z)
            return ExistsFun(g.var, And(ForallNum(loop.var, bad), g.body.right))

        monkeypatch.setattr(translations, "rec_eliminate", wrong_base)
        assert not check_rec_equiv(F("rec(5; lam w. expof(w, 0) + expof(w, 1); 3) = 8"))


class TestLambdaEliminate:
    def test_lambda_free_unchanged(self):
        f = F("forall x. alpha(x) = sg(x)")
        assert lambda_eliminate(f) == f

    def test_example(self):
        assert lambda_eliminate(F("(lam x. x)(3) = 3")) == F(
            "exists alpha. (forall x. x = alpha(x)) & alpha(3) = 3"
        )

    def test_fresh_alpha_avoids_existing(self):
        out = lambda_eliminate(F("(lam x. x)(alpha(0)) = 3"))
        assert out.var != alpha

    def test_outermost_first(self):
        e = F("sum(2, lam i. (lam k. k + i)(1)) = 3")
        path, lam = find_outer_lambda(e)
        assert to_text(lam) == "lam i. (lam k. k + i)(1)"

    @given(gens)
    def test_syntactic_properties(self, g):
        f = g.formula((x, y), 3, lambda ns: lambda_prime(g, ns) if g.chance(0.7) else plain_prime(g, ns))
        out = lambda_eliminate(f)
        assert not has_lambda(out)
        assert free_vars(out) == free_vars(f)
        assert lambda_eliminate(out) == out

    @given(gens)
    def test_commutes(self, g):
        a = lambda_prime(g, (x,))
        b = plain_prime(g, (x, y))
        for build in (lambda p, q: p.__class__ and And(p, q), lambda p, q: ExistsFun(gamma, p)):
            assert lambda_eliminate(build(a, b)) == build(lambda_eliminate(a), lambda_eliminate(b))


class TestLambdaCheck:
    def test_examples(self):
        assert check_lambda_equiv(F("(lam x. x * x)(3) = 9"))
        assert check_lambda_equiv(F("(lam x. x)(0) = 1"))

    def test_nested_and_open(self):
        f = F("sum(x, lam i. (lam k. k + i)(y)) = x * y + sum(x, lam i. i)")
        for a, b in itertools.product(range(4), repeat=2):
            assert check_lambda_equiv(f, asg={x: a, y: b})

    @given(gens)
    def test_generated(self, g):
        f = lambda_prime(g, (x, y))
        for a, b in itertools.product(range(3), repeat=2):
            assert check_lambda_equiv(f, asg={x: a, y: b})

    def test_detects_wrong_output(self, monkeypatch):
        real = translations.lambda_eliminate

        def wrong(f):
            g = real(f)
            loop = g.body.left
            bad = ForallNum(loop.var, Eq(succ(loop.body.lhs), loop.body.rhs))
            return ExistsFun(g.var, And(bad, g.body.right))

        monkeypatch.setattr(translations, "lambda_eliminate", wrong)
        assert not check_lambda_equiv(F("(lam x. x * x)(3) = 9"))
