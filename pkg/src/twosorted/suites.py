"""Seeded property suites.

Each suite draws ``cases`` instances from a seeded generator, checks one
property family on each and returns a :class:`SuiteReport`.  Reports are
deterministic in ``(cases, seed)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from . import kernel
from .decidable import (
    char_term,
    choice_witness,
    least_witness,
    pairing_witness_holds,
    truth,
)
from .errors import SchemaError
from .generators import STEP_FUNCTOR_TEXTS, Gen, lambda_prime, plain_prime, rec_prime
from .kernel import (
    DEFINING_AXIOMS,
    FUNCTOR_POOL,
    Environment,
    Evaluator,
    check_defining_axiom,
    codec,
)
from .schemas.schemata import SCHEMATA, SchemaId, instance, instantiate, match
from .schemas.systems import (
    base_system,
    define_prim_rec,
    expand_defined,
    formula_in_language,
    get_system,
    system_table,
)
from .syntax.ast import (
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
    numeral,
    succ,
)
from .syntax.ops import congruent, free_vars, has_lambda, has_rec
from .syntax.parser import parse_functor
from .syntax.printer import to_text
from .translations import (
    check_lambda_equiv,
    check_rec_equiv,
    lambda_eliminate,
    rec_eliminate,
)

X, Y, Z = NumVar("x"), NumVar("y"), NumVar("z")
ALPHA = FunVar("alpha")
STEP_POOL = tuple(parse_functor(s) for s in STEP_FUNCTOR_TEXTS)
# Pool functors with bounded range.  The others, iterated on codes, build
# exponent towers at y = 3 already.
BOUNDED_POOL = tuple(FUNCTOR_POOL[i] for i in (0, 3, 4, 7))


@dataclass(frozen=True)
class SuiteReport:
    name: str
    cases: int
    seed: int
    passed: int
    failed: int
    first_counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "cases": str(self.cases),
            "seed": str(self.seed),
            "passed": str(self.passed),
            "failed": str(self.failed),
            "first_counterexample": self.first_counterexample,
        }


@dataclass
class _Tally:
    passed: int = 0
    failed: int = 0
    first: str | None = None

    def record(self, ok: bool, describe: Callable[[], str]) -> None:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first is None:
                self.first = describe()

    def report(self, name: str, cases: int, seed: int) -> SuiteReport:
        return SuiteReport(name, cases, seed, self.passed, self.failed, self.first)


def _assignments(vs, hi: int):
    for vals in itertools.product(range(hi + 1), repeat=len(vs)):
        yield dict(zip(vs, vals))


def _fmt_asg(a: dict) -> str:
    return "{" + ", ".join(f"{v}: {n}" for v, n in sorted(a.items())) + "}"


# -- defining axioms --------------------------------------------------------

def defining_axioms_suite(cases: int = 1000, seed: int = 0, max_arg: int = 40) -> SuiteReport:
    """Random argument tuples, numbers in ``0..max_arg``, functors from the pool."""
    rng = random.Random(seed)
    consts = sorted(DEFINING_AXIOMS)
    tally = _Tally()
    for _ in range(cases):
        c = rng.choice(consts)
        ax = DEFINING_AXIOMS[c]
        nums = tuple(rng.randint(0, max_arg) for _ in ax.num_params)
        funs = tuple(rng.choice(FUNCTOR_POOL) for _ in ax.fun_params)
        ok = check_defining_axiom(c, nums, funs)
        tally.record(ok, lambda: f"{c}{nums} with {[to_text(u) for u in funs]}")
    return tally.report("defining-axioms", cases, seed)


# -- codec ------------------------------------------------------------------

def codec_suite(cases: int = 1000, seed: int = 0) -> SuiteReport:
    """Roundtrip on random sequences, concat on positive entries, and
    bar/tilde on every pooled functor for ``x <= 12``."""
    rng = random.Random(seed)
    tally = _Tally()
    for _ in range(cases):
        xs = [rng.randint(0, 20) for _ in range(rng.randint(0, 6))]
        a = codec.encode_seq(xs)
        ok = all(codec.component(a, i) == v for i, v in enumerate(xs))
        ok = ok and codec.decode_seq(a, len(xs)) == xs
        pos = [rng.randint(1, 20) for _ in range(rng.randint(0, 6))]
        qs = [rng.randint(1, 20) for _ in range(rng.randint(0, 6))]
        ok = ok and codec.seq_len(codec.encode_seq(pos)) == len(pos)
        ok = ok and codec.concat(codec.encode_seq(pos), codec.encode_seq(qs)) == codec.encode_seq(pos + qs)
        tally.record(ok, lambda: f"xs={xs} pos={pos} qs={qs}")
    for u in FUNCTOR_POOL:
        f = kernel.eval_functor(u)
        for x in range(13):
            ok = codec.bar_code(f, x) == codec.tilde_code(lambda i: f(i) + 1, x)
            tally.record(ok, lambda: f"bar/tilde at {to_text(u)}, x={x}")
    return tally.report("codec", cases, seed)


# -- characteristic terms ---------------------------------------------------

def char_term_suite(cases: int = 500, seed: int = 0, hi: int = 5) -> SuiteReport:
    """``q <= 1`` and ``q = 0`` iff true, under every assignment in ``0..hi``."""
    g = Gen.seeded(seed)
    tally = _Tally()
    for _ in range(cases):
        nums = (X, Y, Z)[: g.rng.randint(1, 3)]
        f = g.bounded_formula(nums, 4)
        q = char_term(f).q
        ev = Evaluator()
        bad = None
        for a in _assignments(sorted(free_vars(f)[0]), hi):
            v = ev.term(q, a)
            if v > 1 or (v == 0) != truth(f, asg=a):
                bad = a
                break
        tally.record(bad is None, lambda: f"{to_text(f)} at {_fmt_asg(bad)}")
    return tally.report("char-term", cases, seed)


# -- least and choice witnesses ---------------------------------------------

def witness_suite(cases: int = 500, seed: int = 0, cap: int = 20, domain: int = 6) -> SuiteReport:
    """Least witnesses are minimal on rescan; choice tables satisfy the match
    and minimality clauses and the pairing construction."""
    g = Gen.seeded(seed)
    tally = _Tally()
    for _ in range(cases):
        f = g.bounded_formula((X, Y), 3)
        x_val = g.rng.randint(0, 5)
        asg = {X: x_val}
        n = least_witness(f, Y, asg=asg, cap=cap)
        scan = [truth(f, asg={X: x_val, Y: m}) for m in range(cap + 1)]
        ok = (n is None and not any(scan)) or (n is not None and scan[n] and not any(scan[:n]))
        tally.record(ok, lambda: f"least for {to_text(f)} at x={x_val}: {n}")

        h = Or(f, Eq(Y, ConstApp("add", (X, numeral(3)))))
        table = choice_witness(h, X, Y, domain_bound=domain, cap=cap)
        q = char_term(h).q
        ev = Evaluator()
        ok = pairing_witness_holds(h, X, Y, table)
        for m, gm in enumerate(table):
            ok = ok and ev.term(q, {X: m, Y: gm}) == 0
            ok = ok and all(ev.term(q, {X: m, Y: k}) != 0 for k in range(gm))
        tally.record(ok, lambda: f"choice for {to_text(h)}: {table}")
    return tally.report("least-choice", cases, seed)


# -- translations -----------------------------------------------------------

def _wrappers(g: Gen, a, b):
    v = g.choice((X, Y, NumVar("n")))
    f = g.choice((ALPHA, FunVar("delta")))
    return (
        (lambda t: Not(t[0]), (a,)),
        (lambda t: And(*t), (a, b)),
        (lambda t: Or(*t), (a, b)),
        (lambda t: Implies(*t), (a, b)),
        (lambda t: ForallNum(v, t[0]), (a,)),
        (lambda t: ExistsNum(v, t[0]), (a,)),
        (lambda t: ForallFun(f, t[0]), (a,)),
        (lambda t: ExistsFun(f, t[0]), (a,)),
    )


def _syntactic(g: Gen, f, plain, transform, present) -> str | None:
    t = transform(f)
    if present(t):
        return "output not eliminated"
    if free_vars(t) != free_vars(f):
        return "free variables changed"
    if transform(t) != t:
        return "not idempotent"
    if transform(plain) != plain:
        return "not the identity on an already eliminated input"
    for build, args in _wrappers(g, f, plain):
        if transform(build(args)) != build(tuple(transform(x) for x in args)):
            return "does not commute with a connective or quantifier"
    return None


def _translate_suite(
    name: str,
    cases: int,
    semantic: int | None,
    seed: int,
    make_prime,
    make_decidable,
    transform,
    present,
    check,
) -> SuiteReport:
    g = Gen.seeded(seed)
    tally = _Tally()
    for _ in range(cases):
        nums = (X, Y)[: g.rng.randint(1, 2)]
        f = g.formula(nums, 3, lambda ns: make_prime(g, ns) if g.chance(0.6) else plain_prime(g, ns))
        plain = g.formula(nums, 2, lambda ns: plain_prime(g, ns))
        why = _syntactic(g, f, plain, transform, present)
        tally.record(why is None, lambda: f"{why}: {to_text(f)}")
    env = Environment({ALPHA: FUNCTOR_POOL[2]})
    for _ in range(cases if semantic is None else semantic):
        f = make_decidable(g)
        bad = None
        for a in _assignments(sorted(free_vars(f)[0]), 4):
            if not check(f, env, a):
                bad = a
                break
        tally.record(bad is None, lambda: f"{to_text(f)} at {_fmt_asg(bad)}")
    return tally.report(name, cases, seed)


def _decidable_with(g: Gen, prime):
    nums = (X, Y)[: g.rng.randint(1, 2)]
    p = prime(nums)
    if g.chance(0.4):
        return p
    other = g.bounded_formula(nums, 1, qdepth=0)
    if g.chance(0.5):
        q = NumVar("q")
        return g.bounded(q, g.bound_term(nums), prime(nums + (q,)))
    op = g.choice((And, Or, Implies))
    return op(p, other) if g.chance(0.5) else op(other, p)


def rec_translate_suite(cases: int = 300, seed: int = 0, semantic: int | None = 200) -> SuiteReport:
    def one_rec(g, nums):
        r = g.rec_term(nums, (ALPHA,))
        other = g.term(nums, 1, (ALPHA,), mul=False)
        return Eq(r, other) if g.chance(0.5) else Eq(other, r)

    return _translate_suite(
        "rec-translate",
        cases,
        semantic,
        seed,
        lambda g, ns: rec_prime(g, ns, (ALPHA,)),
        lambda g: _decidable_with(g, lambda ns: one_rec(g, ns)),
        rec_eliminate,
        has_rec,
        lambda f, env, a: check_rec_equiv(f, env, a, w_bound=64),
    )


def lambda_translate_suite(cases: int = 500, seed: int = 0, semantic: int | None = 200) -> SuiteReport:
    return _translate_suite(
        "lambda-translate",
        cases,
        semantic,
        seed,
        lambda g, ns: lambda_prime(g, ns),
        lambda g: _decidable_with(g, lambda ns: lambda_prime(g, ns)),
        lambda_eliminate,
        has_lambda,
        lambda f, env, a: check_lambda_equiv(f, env, a),
    )


# -- schemata ---------------------------------------------------------------

_NUMVARS = (X, Y, Z, NumVar("n"), NumVar("m"), NumVar("w"))
_FUNVARS = (ALPHA, FunVar("beta"), FunVar("gamma"), FunVar("delta"))


def _piece(g: Gen, kind: str, schema: SchemaId):
    if kind == "numvar":
        return g.choice(_NUMVARS)
    if kind == "funvar":
        return g.choice(_FUNVARS)
    if kind == "term":
        return g.term(_NUMVARS[:3], 2, (g.choice(_FUNVARS),))
    if kind == "functor":
        return g.choice(FUNCTOR_POOL + (ALPHA, FunVar("delta")))
    if kind == "str":
        return g.choice(("monus", "exists"))
    nums = _NUMVARS[:3]
    if schema is SchemaId.QFAC00:
        return g.qf_formula(nums, 2, (FunVar("delta"),))
    return g.formula(nums, 2, lambda ns: plain_prime(g, ns))


def random_pieces(g: Gen, schema: SchemaId, tries: int = 200) -> dict:
    """Pieces whose instance satisfies every side condition."""
    kinds = SCHEMATA[schema].kinds
    for _ in range(tries):
        p = {k: _piece(g, kind, schema) for k, kind in kinds.items()}
        if schema is SchemaId.ReflRepl and g.chance(0.2):
            p = {"x": p["x"]}
        if instance(schema, p).valid:
            return p
    raise RuntimeError(f"no valid pieces found for {schema.value}")


def _violations(g: Gen) -> list[tuple[SchemaId, dict]]:
    """Piece sets each breaking at least one side condition."""
    b, a, d = FunVar("beta"), ALPHA, FunVar("delta")
    t = g.term((X,), 1, mul=False)
    capture = Apply(Lambda(Y, ConstApp("add", (X, Y))), numeral(1))
    eq_free = lambda v: Eq(Apply(v, X), g.term((X, Y), 1, mul=False))
    return [
        (SchemaId.CFd, {"B": And(eq_free(b), g.eq((X,), 1)), "x": X, "beta": b}),
        (SchemaId.AC00Bang, {"A": eq_free(a), "x": X, "y": Y, "alpha": a}),
        (SchemaId.AC00Bang, {"A": g.eq((X, Y), 1), "x": X, "y": X, "alpha": a}),
        (SchemaId.QFAC00, {"A": ForallNum(Z, Eq(Y, Z)), "x": X, "y": Y, "alpha": a}),
        (SchemaId.QFAC00, {"A": Eq(Apply(a, Y), X), "x": X, "y": Y, "alpha": a}),
        (SchemaId.QFtAC00, {"t": ConstApp("add", (NumVar("w"), Y)), "w": NumVar("w"), "x": X, "y": Y, "alpha": a}),
        (SchemaId.LambdaConv, {"t": capture, "x": X, "s": Y}),
        (SchemaId.RecAxiom, {"t": Apply(b, t), "u": STEP_POOL[0], "s": X, "beta": b, "z": Z}),
        (SchemaId.RecAxiom, {"t": t, "u": Lambda(Y, ConstApp("add", (Y, Z))), "s": X, "beta": b, "z": Z}),
        (SchemaId.ReflRepl, {"A": g.eq((Z,), 1), "z": Z, "x": X, "y": X}),
        (SchemaId.UnboundedSearch, {"alpha": a, "gamma": a}),
        (SchemaId.MinimalCountableChoice, {"alpha": a, "gamma": FunVar("gamma"), "m": X, "n": X}),
        (SchemaId.BIMPrimRec, {"alpha": a, "beta": a, "gamma": FunVar("gamma")}),
        (SchemaId.WKVPrimRec, {"t": Apply(b, X), "r": FUNCTOR_POOL[1], "beta": b, "y": Y}),
        (SchemaId.WKVPrimRec, {"t": t, "r": Lambda(Z, ConstApp("add", (Z, Y))), "beta": b, "y": Y}),
        (SchemaId.CFd, {"B": ExistsNum(Y, Eq(Apply(d, Y), X)), "x": X, "beta": d}),
    ]


def schema_roundtrip_suite(cases: int = 300, seed: int = 0, adversarial: int = 100) -> SuiteReport:
    """``cases`` instances per schema survive instantiate, match,
    instantiate; ``adversarial`` condition-breaking piece sets are rejected
    by name and never matched."""
    g = Gen.seeded(seed)
    tally = _Tally()
    for schema in SchemaId:
        for _ in range(cases):
            p = random_pieces(g, schema)
            f1 = instantiate(schema, p)
            m = match(f1, schema)
            ok = m is not None and congruent(instantiate(schema, m.pieces), f1)
            tally.record(ok, lambda: f"{schema.value}: {to_text(f1)}")
    for _ in range(adversarial):
        schema, p = g.choice(_violations(g))
        inst = instance(schema, p)
        failing = {name for name, ok in inst.side_conditions if not ok}
        try:
            instantiate(schema, p)
            named = False
        except SchemaError as exc:
            named = exc.condition in failing
        accepted = match(inst.formula, schema) is not None
        ok = bool(failing) and named and not accepted
        tally.record(ok, lambda: f"{schema.value} accepted {to_text(inst.formula)}")
    return tally.report("schema-roundtrip", cases, seed)


# -- definitional extension --------------------------------------------------

def _step_term(g: Gen, u: NumVar, v: NumVar, x: NumVar):
    core = g.term((x, v), 2, mul=False)
    if g.chance(0.2):
        return core
    op = g.choice(("add", "maxf", "minf", "monus", "absdiff"))
    return ConstApp(op, (u, core) if g.chance(0.5) else (core, u))


def definitional_suite(cases: int = 100, seed: int = 0, max_arg: int = 8, system: str = "EL") -> SuiteReport:
    """A defined constant evaluates like its rec-expansion, and the
    expansion lies in the base language."""
    g = Gen.seeded(seed)
    sys0 = get_system(system)
    u, v = NumVar("u"), NumVar("v")
    tally = _Tally()
    for _ in range(cases):
        gt = g.term((X,), 2, mul=False)
        ht = _step_term(g, u, v, X)
        sys1, rule = define_prim_rec(sys0, "ff", gt, ht)
        table = system_table(sys1)
        ev_def, ev_base = Evaluator(table=table), Evaluator()
        app = ConstApp("ff", (X, Y))
        expanded = expand_defined(app, [rule])
        ok = formula_in_language(expand_defined(Eq(app, numeral(0)), [rule]), base_system(sys1))
        bad = None
        for a in _assignments((X, Y), max_arg):
            if ev_def.term(app, a) != ev_base.term(expanded, a):
                bad = a
                break
        ok = ok and bad is None
        tally.record(ok, lambda: f"g={to_text(gt)} h={to_text(ht)} at {bad}")
    return tally.report("definitional-extension", cases, seed)


# -- Rec versus REC ---------------------------------------------------------

def rec_axiom_suite(cases: int = 0, seed: int = 0, hi: int = 12) -> SuiteReport:
    """Both REC equations and the Rec-axiom body for every ``x, y <= hi`` and
    every bounded pool functor and step functor; ``cases`` adds random extra steps."""
    g = Gen.seeded(seed)
    steps = list(BOUNDED_POOL + STEP_POOL) + [g.step_functor() for _ in range(cases)]
    tally = _Tally()
    ev = Evaluator()
    for u in steps:
        alpha = ev.functor(u, {})
        for x, y in itertools.product(range(hi + 1), repeat=2):
            t, s = numeral(x), numeral(y)
            r = ev.term(RecApp(t, u, s), {})
            ok = ev.term(RecApp(t, u, numeral(0)), {}) == x
            ok = ok and ev.term(RecApp(t, u, succ(s)), {}) == alpha(codec.encode_seq((r, y)))
            code = codec.course_of_values(x, alpha, y)
            ok = ok and codec.is_course_of_values(x, alpha, y, code)
            ok = ok and codec.component(code, y) == r
            tally.record(ok, lambda: f"{to_text(u)} at x={x}, y={y}")
    return tally.report("rec-axiom", cases, seed)


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "defining-axioms": defining_axioms_suite,
    "codec": codec_suite,
    "char-term": char_term_suite,
    "least-choice": witness_suite,
    "rec-translate": rec_translate_suite,
    "lambda-translate": lambda_translate_suite,
    "schema-roundtrip": schema_roundtrip_suite,
    "definitional-extension": definitional_suite,
    "rec-axiom": rec_axiom_suite,
}


def run_suite(name: str, cases: int | None = None, seed: int = 0) -> SuiteReport:
    from .errors import InputError

    if name not in SUITES:
        raise InputError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    fn = SUITES[name]
    return fn(seed=seed) if cases is None else fn(cases=cases, seed=seed)


__all__ = ["SUITES", "STEP_POOL", "BOUNDED_POOL", "SuiteReport", "random_pieces", "run_suite"] + [
    n for n in dir() if n.endswith("_suite")
]
