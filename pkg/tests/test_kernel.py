import math

import pytest
import sympy
from hypothesis import given, strategies as st

from twosorted.errors import InputError, UnboundVariableError, UnsupportedConstantError
from twosorted.kernel import (
    BASE_TABLE,
    DEFINING_AXIOMS,
    FUNCTOR_POOL,
    Assignment,
    ConstantDef,
    ConstantTable,
    Environment,
    bindings_from_json,
    bindings_to_json,
    cantor_pair,
    cantor_unpair,
    check_defining_axiom,
    codec,
    eval_functor,
    eval_term,
    holds_qf,
    mu_term,
    prime_formula,
)
from twosorted.syntax import FunVar, NumVar, numeral, parse, parse_formula, parse_functor, parse_term

x, y = NumVar("x"), NumVar("y")
alpha = FunVar("alpha")
naturals = st.integers(0, 60)


def E(text, **asg):
    return eval_term(parse_term(text), asg={NumVar(k): v for k, v in asg.items()})


class TestEvaluation:
    def test_pd_zero(self):
        assert E("pd(0)") == 0

    def test_rec_unfolds(self):
        assert E("rec(5; lam w. expof(w, 0) + expof(w, 1); 3)") == 8

    def test_lambda_application(self):
        assert E("(lam x. x * x)(3)") == 9

    def test_functors(self):
        assert eval_functor(parse_functor("lam x. x'"))(4) == 5
        env = Environment({alpha: parse_functor("lam x. 0")})
        assert eval_functor(alpha, env)(9) == 0
        assert eval_functor(parse_functor("sg"))(7) == 1

    @pytest.mark.parametrize(
        "text, value",
        [
            ("monus(3, 7)", 0),
            ("absdiff(3, 7)", 4),
            ("rm(7, 3)", 1),
            ("quot(7, 3)", 2),
            ("rm(7, 0)", 7),
            ("quot(7, 0)", 0),
            ("fact(5)", 120),
            ("exp(2, 10)", 1024),
            ("prime(0)", 2),
            ("prime(4)", 11),
            ("sum(4, lam i. i)", 6),
            ("prod(3, lam i. i')", 6),
            ("maxle(3, lam i. rm(i, 3))", 2),
            ("minle(3, lam i. absdiff(i, 2))", 0),
            ("lh(12)", 2),
            ("concat(12, 8)", 1500),
            ("bar(2, lam i. i)", 18),
            ("tilde(2, lam i. i)", 3),
        ],
    )
    def test_constants(self, text, value):
        assert E(text) == value

    @given(naturals, st.integers(0, 12))
    def test_rm_quot_division(self, a, b):
        q, r = E("quot(x, y)", x=a, y=b), E("rm(x, y)", x=a, y=b)
        if b:
            assert (q, r) == divmod(a, b)
        else:
            assert (q, r) == (0, a)

    @given(st.integers(0, 25))
    def test_prime_matches_sympy(self, i):
        assert E("prime(x)", x=i) == sympy.prime(i + 1)

    @given(st.integers(0, 15))
    def test_fact(self, n):
        assert E("fact(x)", x=n) == math.factorial(n)

    def test_unbound(self):
        with pytest.raises(UnboundVariableError):
            E("x + 1")
        with pytest.raises(UnboundVariableError):
            eval_term(parse_term("alpha(1)"))

    def test_ccp_has_no_semantics(self):
        with pytest.raises(UnsupportedConstantError):
            E("ccp(1)")

    def test_environment_must_be_closed(self):
        with pytest.raises(InputError):
            Environment({alpha: parse_functor("lam x. x + y")})

    def test_qf_holds(self):
        assert holds_qf(parse_formula("x < 3 -> x * x < 9"), asg={x: 2})
        assert not holds_qf(parse_formula("x = 0 \\/ x = 1"), asg={x: 2})

    def test_bindings_json(self):
        env, asg = bindings_from_json('{"funvars": {"alpha": "lam x. x + 1"}, "numvars": {"x": 3}}')
        assert eval_term(parse_term("alpha(x)"), env, asg) == 4
        assert bindings_from_json(bindings_to_json(env, asg)) == (env, asg)
        with pytest.raises(InputError):
            bindings_from_json('{"numvars": {"x": "three"}}')


class TestCodec:
    def test_examples(self):
        assert codec.encode_seq([]) == 1
        assert codec.encode_seq([2, 1]) == 12
        assert codec.encode_seq([5, 6, 7]) == 1822500000
        assert codec.component(12, 0) == 2 and codec.component(12, 1) == 1
        assert codec.seq_len(12) == 2
        assert codec.concat(12, 8) == 1500 == codec.encode_seq([2, 1, 3])
        assert codec.bar_code(lambda i: i, 2) == 18
        assert codec.tilde_code(lambda i: i, 2) == 3

    def test_component_of_zero(self):
        assert codec.component(0, 3) == 0

    @given(st.lists(st.integers(0, 20), max_size=6))
    def test_against_factorint(self, xs):
        a = codec.encode_seq(xs)
        factors = sympy.factorint(a)
        for i, v in enumerate(xs):
            assert factors.get(sympy.prime(i + 1), 0) == v
            assert codec.component(a, i) == v

    @given(st.lists(st.integers(1, 20), max_size=6), st.lists(st.integers(1, 20), max_size=6))
    def test_concat_positive(self, xs, ys):
        assert codec.seq_len(codec.encode_seq(xs)) == len(xs)
        assert codec.concat(codec.encode_seq(xs), codec.encode_seq(ys)) == codec.encode_seq(xs + ys)

    @pytest.mark.parametrize("u", FUNCTOR_POOL)
    def test_bar_is_shifted_tilde(self, u):
        f = eval_functor(u)
        for n in range(13):
            assert codec.bar_code(f, n) == codec.tilde_code(lambda i: f(i) + 1, n)

    @given(st.lists(st.integers(0, 6), max_size=4), st.lists(st.integers(0, 6), max_size=4))
    def test_join_takes_max(self, xs, ys):
        a, b = codec.encode_seq(xs), codec.encode_seq(ys)
        n = max(len(xs), len(ys))
        xs2, ys2 = xs + [0] * (n - len(xs)), ys + [0] * (n - len(ys))
        assert codec.join(a, b) == codec.encode_seq([max(p, q) for p, q in zip(xs2, ys2)])

    def test_course_of_values(self):
        step = lambda w: codec.component(w, 0) + 1
        assert codec.course_of_values(5, step, 2) == 1822500000
        assert codec.course_of_values(0, lambda w: 0, 3) == 1
        for n in range(6):
            assert codec.course_of_values(n, step, 0) == 2**n

    def test_is_course_of_values(self):
        step = lambda w: codec.component(w, 0) + 1
        v = codec.course_of_values(5, step, 2)
        assert codec.is_course_of_values(5, step, 2, v)
        # components past y are unconstrained
        assert codec.is_course_of_values(5, step, 2, v * 7)
        assert not codec.is_course_of_values(5, step, 2, v * 2)
        assert not codec.is_course_of_values(5, step, 2, v * 5)
        assert not codec.is_course_of_values(4, step, 2, v)

    @given(st.integers(0, 200), st.integers(0, 200))
    def test_cantor(self, m, n):
        assert cantor_unpair(cantor_pair(m, n)) == (m, n)

    @given(st.integers(0, 10**6))
    def test_cantor_onto(self, z):
        assert cantor_pair(*cantor_unpair(z)) == z


class TestDefiningAxioms:
    def test_examples(self):
        assert check_defining_axiom("maxf", (3, 7), ())
        assert check_defining_axiom("monus", (3, 0), ())
        assert check_defining_axiom("rm", (7, 3), ()) and E("rm(7, 3)") == 1

    def test_all_constants_covered(self):
        names = set(DEFINING_AXIOMS)
        assert "ccp" not in names and len(names) == 26

    def test_ccp_unsupported(self):
        with pytest.raises(UnsupportedConstantError):
            check_defining_axiom("ccp", (1,), ())

    def test_broken_table_detected(self):
        entries = dict(BASE_TABLE.entries)
        entries["rm"] = ConstantDef(entries["rm"].sig, lambda n, f: n[0] % (n[1] + 1))
        broken = ConstantTable(entries)
        bad = [
            (a, b) for a in range(6) for b in range(6)
            if not check_defining_axiom("rm", (a, b), (), broken)
        ]
        assert bad

    @pytest.mark.parametrize("const", sorted(DEFINING_AXIOMS))
    def test_small_grid(self, const):
        ax = DEFINING_AXIOMS[const]
        import itertools

        for nums in itertools.product(range(6), repeat=len(ax.num_params)):
            for funs in itertools.product(FUNCTOR_POOL[:4], repeat=len(ax.fun_params)):
                assert check_defining_axiom(const, nums, funs)

    def test_prime_formula(self):
        primes = [b for b in range(30) if holds_qf_bounded(b)]
        assert primes == list(sympy.primerange(0, 30))

    def test_mu_term(self):
        # least y < 10 with y * y > 20 is 5; with no witness the bound
        r = parse_term("sgbar(monus(y * y, 20))")
        assert eval_term(mu_term(y, numeral(10), r)) == 5
        assert eval_term(mu_term(y, numeral(3), r)) == 3


def holds_qf_bounded(b):
    from twosorted.decidable import truth

    return truth(prime_formula(numeral(b)))
