"""Hypothesis strategies for syntax trees."""

from hypothesis import strategies as st

from twosorted.generators import Gen
from twosorted.syntax import (
    And,
    Apply,
    ConstApp,
    Eq,
    ExistsFun,
    ExistsNum,
    ForallFun,
    ForallNum,
    FunVar,
    Implies,
    Lambda,
    Not,
    NumVar,
    Or,
    RecApp,
    UnaryConst,
    numeral,
)

NUMVARS = [NumVar("x"), NumVar("y"), NumVar("z"), NumVar("x", 1)]
FUNVARS = [FunVar("alpha"), FunVar("beta"), FunVar("f")]

numvars = st.sampled_from(NUMVARS)
funvars = st.sampled_from(FUNVARS)


def _extend_terms(children):
    unary = st.sampled_from(["succ", "pd", "sg", "sgbar", "fact"])
    binary = st.sampled_from(["add", "mul", "monus", "minf", "rm", "quot", "expof", "exp"])
    return st.one_of(
        st.builds(lambda c, a: ConstApp(c, (a,)), unary, children),
        st.builds(lambda c, a, b: ConstApp(c, (a, b)), binary, children, children),
        st.builds(Apply, funvars, children),
        st.builds(Apply, st.builds(Lambda, numvars, children), children),
        st.builds(lambda a, b, v, t: ConstApp("sum", (a,), (Lambda(v, t),)), children, children, numvars, children),
        st.builds(RecApp, children, st.sampled_from([UnaryConst("sg"), FunVar("alpha")]) | st.builds(Lambda, numvars, children), children),
    )


terms = st.recursive(
    st.one_of(numvars, st.integers(0, 4).map(numeral)),
    _extend_terms,
    max_leaves=12,
)


def _extend_formulas(children):
    return st.one_of(
        st.builds(Not, children),
        st.builds(And, children, children),
        st.builds(Or, children, children),
        st.builds(Implies, children, children),
        st.builds(ForallNum, numvars, children),
        st.builds(ExistsNum, numvars, children),
        st.builds(ForallFun, funvars, children),
        st.builds(ExistsFun, funvars, children),
    )


formulas = st.recursive(st.builds(Eq, terms, terms), _extend_formulas, max_leaves=6)

seeds = st.integers(0, 2**32 - 1)
gens = seeds.map(Gen.seeded)
