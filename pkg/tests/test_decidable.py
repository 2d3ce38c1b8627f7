import itertools

import pytest
from hypothesis import given

from twosorted.decidable import (
    DecidabilityClass,
    bounded_parts,
    cfd_witness,
    char_term,
    choice_witness,
    classify,
    expand,
    is_decidable,
    least_witness,
    pairing_witness_holds,
    truth,
)
from twosorted.errors import NoWitnessError, UndecidableFormulaError
from twosorted.kernel import Environment, Evaluator, eval_term, holds_qf
from twosorted.syntax import FunVar, NumVar, free_vars, has_rec, parse_formula, parse_functor, parse_term

from .strategies import gens

x, y, z = NumVar("x"), NumVar("y"), NumVar("z")
F = parse_formula


class TestClassify:
    @pytest.mark.parametrize(
        "text, cls",
        [
            ("x = y", DecidabilityClass.QuantifierFree),
            ("exists y. y < x & y * y = x", DecidabilityClass.BoundedOnly),
            ("forall i. i <= x -> alpha(i) = 0", DecidabilityClass.BoundedOnly),
            ("exists alpha. alpha(0) = 0", DecidabilityClass.Other),
            ("forall x. x = x", DecidabilityClass.Other),
            ("exists y. y < y & y = 0", DecidabilityClass.Other),
            ("exists y. y = 0 & y < 3", DecidabilityClass.Other),
        ],
    )
    def test_classes(self, text, cls):
        assert classify(F(text)) is cls

    def test_bounded_parts(self):
        bq = bounded_parts(F("forall i. i <= x -> i = i"))
        assert bq.universal and not bq.strict and bq.bound == x

    def test_order(self):
        assert DecidabilityClass.QuantifierFree < DecidabilityClass.BoundedOnly < DecidabilityClass.Other


class TestTruth:
    def test_examples(self):
        assert truth(F("exists y. y < 5 & y * y = 9"))
        assert not truth(F("0 = 0'"))
        env = Environment({FunVar("alpha"): parse_functor("lam x. 0")})
        assert truth(F("forall i. i < 3 -> alpha(i) = 0"), env)

    def test_other_rejected(self):
        with pytest.raises(UndecidableFormulaError):
            truth(F("forall x. x = x"))

    @given(gens)
    def test_agrees_with_expansion(self, g):
        f = g.bounded_formula((x, y), 3)
        for a in itertools.product(range(4), repeat=2):
            asg = dict(zip((x, y), a))
            expanded = expand(f, asg=asg)
            assert classify(expanded) is DecidabilityClass.QuantifierFree
            assert holds_qf(expanded) == truth(f, asg=asg)


class TestCharTerm:
    def test_equation(self):
        q = char_term(F("x = y")).q
        assert q == parse_term("sg(absdiff(x, y))")
        assert eval_term(q, asg={x: 3, y: 3}) == 0
        assert eval_term(q, asg={x: 2, y: 5}) == 1

    def test_rejects_other(self):
        with pytest.raises(UndecidableFormulaError):
            char_term(F("exists alpha. alpha(0) = 0"))

    def test_rec_free_output(self):
        assert not has_rec(char_term(F("forall i. i < x -> exists k. k <= i & k = i")).q)

    @given(gens)
    def test_contract(self, g):
        f = g.bounded_formula((x, y, z), 4)
        q = char_term(f).q
        ev = Evaluator()
        for a in itertools.product(range(4), repeat=3):
            asg = dict(zip((x, y, z), a))
            v = ev.term(q, asg)
            assert v <= 1
            assert (v == 0) == truth(f, asg=asg)


class TestWitnesses:
    def test_least(self):
        assert least_witness(F("10 <= y * y"), y, cap=100) == 4
        assert least_witness(F("y = y"), y, cap=100) == 0
        assert least_witness(F("y = y'"), y, cap=100) is None

    @given(gens)
    def test_least_is_minimal(self, g):
        f = g.bounded_formula((x, y), 3)
        n = least_witness(f, y, asg={x: 2}, cap=15)
        scan = [truth(f, asg={x: 2, y: m}) for m in range(16)]
        if n is None:
            assert not any(scan)
        else:
            assert scan[n] and not any(scan[:n])

    def test_choice(self):
        assert choice_witness(F("x < y"), x, y, domain_bound=3, cap=10) == [1, 2, 3]
        assert choice_witness(F("y = 0"), x, y, domain_bound=4) == [0, 0, 0, 0]

    def test_choice_no_witness(self):
        with pytest.raises(NoWitnessError, match="no witness"):
            choice_witness(F("y * y = x"), x, y, domain_bound=3, cap=10)

    def test_pairing(self):
        f = F("x < y")
        table = choice_witness(f, x, y, domain_bound=5, cap=10)
        assert pairing_witness_holds(f, x, y, table)
        assert not pairing_witness_holds(f, x, y, [0] * 5)

    def test_cfd(self):
        assert cfd_witness(F("exists y. y < x & y + y = x"), x, domain_bound=5) == [1, 1, 0, 1, 0]
        assert cfd_witness(F("x = x"), x, domain_bound=3) == [0, 0, 0]

    def test_cfd_matches_char_term(self):
        f = F("exists y. y <= x & y * y = x")
        q = char_term(f).q
        assert cfd_witness(f, x, domain_bound=20) == [eval_term(q, asg={x: m}) for m in range(20)]

    def test_is_decidable(self):
        assert is_decidable(F("x = 0"))
        assert not is_decidable(F("exists x. x = 0"))
