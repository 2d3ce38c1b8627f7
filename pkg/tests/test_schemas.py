import pytest
from hypothesis import given, settings, strategies as st

from twosorted.errors import InputError, LanguageError, SchemaError
from twosorted.kernel import Evaluator, eval_term
from twosorted.schemas import (
    SchemaId,
    base_system,
    builtin_systems,
    define_prim_rec,
    expand_defined,
    formula_in_language,
    get_system,
    instance,
    instantiate,
    language_subset,
    language_violations,
    match,
    match_any,
    piece_kinds,
    system_table,
)
from twosorted.suites import random_pieces
from twosorted.syntax import (
    ConstApp,
    RecApp,
    FunVar,
    NumVar,
    congruent,
    numeral,
    parse,
    parse_formula,
    parse_functor,
    parse_term,
)
from twosorted.translations import a_formula

from .strategies import gens

x, y, z = NumVar("x"), NumVar("y"), NumVar("z")
alpha, beta = FunVar("alpha"), FunVar("beta")
F, T = parse_formula, parse_term


class TestInstantiate:
    def test_cfd(self):
        got = instantiate(SchemaId.CFd, {"B": F("x = 0"), "x": x})
        want = F("(forall x. x = 0 \\/ ~x = 0) -> exists beta. forall x. beta(x) <= 1 & (beta(x) = 0 <-> x = 0)")
        assert got == want

    def test_lambda_conversion(self):
        got = instantiate(SchemaId.LambdaConv, {"t": T("x + x"), "x": x, "s": T("y'")})
        assert got == F("(lam x. x + x)(y') = y' + y'")

    def test_ac_bang_side_condition(self):
        with pytest.raises(SchemaError) as exc:
            instantiate(SchemaId.AC00Bang, {"A": F("alpha(x) = y"), "x": x, "y": y})
        assert exc.value.condition == "alpha does not occur free in A(x,y)"

    def test_cfd_side_condition(self):
        with pytest.raises(SchemaError, match="beta does not occur free in B"):
            instantiate(SchemaId.CFd, {"B": F("beta(x) = 0"), "x": x})

    def test_qf_requires_quantifier_free(self):
        with pytest.raises(SchemaError, match="quantifier-free"):
            instantiate(SchemaId.QFAC00, {"A": F("exists z. z = y"), "x": x, "y": y})

    def test_rec_axiom_is_a_formula(self):
        t, u, s = numeral(5), parse_functor("lam w. expof(w, 0)"), x
        got = instantiate(SchemaId.RecAxiom, {"t": t, "u": u, "s": s})
        assert got == a_formula(t, u, s, RecApp(t, u, s), beta, z)
        assert match(got, SchemaId.RecAxiom) is not None
        clash = instance(SchemaId.RecAxiom, {"t": F("beta(0) = 0").lhs, "u": u, "s": s, "beta": beta})
        assert not clash.valid

    def test_rec(self):
        got = instantiate(SchemaId.REC, {"t": T("x"), "u": parse_functor("sg"), "s": T("y")})
        assert got == F("rec(x; sg; 0) = x & rec(x; sg; y') = (sg)(exp(2, rec(x; sg; y)) * exp(3, y))")

    def test_refl(self):
        assert instantiate(SchemaId.ReflRepl, {"x": x}) == F("x = x")

    def test_missing_piece(self):
        with pytest.raises(InputError, match="missing"):
            instantiate(SchemaId.IND, {"A": F("x = x")})

    def test_unbounded_search_variants(self):
        ltm = instantiate(SchemaId.UnboundedSearch, {})
        lte = instantiate(SchemaId.UnboundedSearch, {"lt": "exists"})
        assert ltm != lte
        assert match(ltm, SchemaId.UnboundedSearch).pieces["lt"] == "monus"
        assert match(lte, SchemaId.UnboundedSearch).pieces["lt"] == "exists"

    def test_piece_kinds(self):
        assert dict(piece_kinds(SchemaId.CFd)) == {"B": "formula", "x": "numvar", "beta": "funvar"}


class TestMatch:
    def test_cfd_roundtrip(self):
        f = instantiate(SchemaId.CFd, {"B": F("x = 0"), "x": x})
        m = match(f, SchemaId.CFd)
        assert m is not None and congruent(m.pieces["B"], F("x = 0"))

    def test_absent(self):
        assert match(F("0 = 0"), SchemaId.IND) is None

    def test_congruent_variant_matches(self):
        f = F("(forall y. y = 0 \\/ ~y = 0) -> exists gamma. forall y. gamma(y) <= 1 & (gamma(y) = 0 <-> y = 0)")
        assert match(f, SchemaId.CFd) is not None

    def test_near_miss(self):
        f = F("(forall x. x = 0 \\/ ~x = 0) -> exists beta. forall x. beta(x) <= 2 & (beta(x) = 0 <-> x = 0)")
        assert match(f, SchemaId.CFd) is None

    def test_match_any(self):
        f = F("(lam x. x)(3) = 3")
        assert [m.schema for m in match_any(f)] == [SchemaId.LambdaConv]

    @pytest.mark.parametrize("schema", list(SchemaId))
    @settings(max_examples=25)
    @given(g=gens)
    def test_roundtrip(self, schema, g):
        p = random_pieces(g, schema)
        f = instantiate(schema, p)
        m = match(f, schema)
        assert m is not None
        assert congruent(instantiate(schema, m.pieces), f)


class TestSystems:
    def test_builtins(self):
        assert {"IA0", "HA", "IA1", "HA1", "M", "EL", "BIM", "H", "WKV"} <= set(builtin_systems())
        with pytest.raises(InputError):
            get_system("ZF")

    @pytest.mark.parametrize(
        "text, system, ok",
        [
            ("rec(0; alpha; x) = 0", "IA1", False),
            ("rec(0; alpha; x) = 0", "HA1", True),
            ("(lam x. x)(0) = 0", "BIM", False),
            ("x + y = y + x", "IA0", True),
            ("fact(x) = 1", "IA0", False),
            ("sum(x, lam i. i) = 0", "EL", False),
            ("sum(x, lam i. i) = 0", "M", True),
            ("exists alpha. alpha(0) = 0", "HA", False),
            ("K(J(x, y)) = x", "BIM", True),
            ("j1(j(x, y)) = x", "WKV", True),
        ],
    )
    def test_in_language(self, text, system, ok):
        assert formula_in_language(parse(text), get_system(system)) is ok

    def test_violations_named(self):
        bad = language_violations(F("rec(0; alpha; x) = 0"), get_system("IA1"))
        assert any("rec" in b for b in bad)

    @pytest.mark.parametrize(
        "small, big",
        [("IA0", "HA"), ("IA0", "IA1"), ("HA", "HA1"), ("HA1", "EL"), ("IA1", "M"), ("BIM", "H"), ("H", "BIM")],
    )
    def test_containments(self, small, big):
        assert language_subset(get_system(small), get_system(big))

    def test_strict(self):
        assert not language_subset(get_system("HA1"), get_system("IA1"))
        assert not language_subset(get_system("M"), get_system("EL"))

    def test_schema_differences(self):
        assert get_system("M").schemata - get_system("IA1").schemata == {SchemaId.AC00Bang}
        assert get_system("EL").schemata - get_system("HA1").schemata == {SchemaId.QFAC00}
        assert get_system("BIM").schemata - get_system("H").schemata == {SchemaId.UnboundedSearch}

    def test_bim_pairing_semantics(self):
        sys_ = get_system("BIM")
        ev = Evaluator(table=system_table(sys_))
        assert ev.term(T("K(J(4, 9))"), {}) == 4 and ev.term(T("L(J(4, 9))"), {}) == 9


class TestDefinitions:
    def setup_method(self):
        self.el = get_system("EL")

    def test_define_and_expand(self):
        # ff(x, 0) = x, ff(x, v') = u + x: multiplication offset by x
        new, rule = define_prim_rec(self.el, "ff", T("x"), T("u + x"))
        assert new.name == "EL+ff" and base_system(new).name == "EL"
        ev = Evaluator(table=system_table(new))
        for a in range(5):
            for b in range(5):
                t = ConstApp("ff", (numeral(a), numeral(b)))
                assert ev.term(t, {}) == a * (b + 1)
                assert eval_term(expand_defined(t, new.extensions)) == a * (b + 1)

    def test_expansion_in_base_language(self):
        new, rule = define_prim_rec(self.el, "ff", T("x"), T("u * v'"))
        f = parse_formula("ff(x, y) = 0", table=new.signature())
        assert not formula_in_language(f, self.el)
        assert formula_in_language(f, new)
        assert formula_in_language(expand_defined(f, new.extensions), self.el)

    def test_stacked(self):
        one, _ = define_prim_rec(self.el, "ff", T("x"), T("u'"))
        two, _ = define_prim_rec(one, "gg", T("0"), parse_term("ff(u, x)", table=one.signature()))
        e = ConstApp("gg", (numeral(3), numeral(4)))
        expanded = expand_defined(e, two.extensions)
        assert formula_in_language(expanded, self.el)
        assert eval_term(expanded) == Evaluator(table=system_table(two)).term(e, {}) == 12

    @pytest.mark.parametrize(
        "name, g, h",
        [
            ("rm", "x", "u"),
            ("forall", "x", "u"),
            ("alpha", "x", "u"),
            ("ff", "x + y", "u"),
            ("ff", "x", "u + w"),
            ("ff", "sum(x, lam i. i)", "u"),
            ("ff", "alpha(x)", "u"),
        ],
    )
    def test_rejected(self, name, g, h):
        with pytest.raises(LanguageError):
            define_prim_rec(self.el, name, T(g), T(h))

    def test_redefinition(self):
        one, _ = define_prim_rec(self.el, "ff", T("x"), T("u"))
        with pytest.raises(LanguageError, match="already exists"):
            define_prim_rec(one, "ff", T("x"), T("u"))

    def test_needs_rec_and_lambda(self):
        with pytest.raises(LanguageError):
            define_prim_rec(get_system("IA1"), "ff", T("x"), T("u"))
