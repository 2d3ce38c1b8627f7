"""Acceptance criteria at full size.

Each test prints one ``criterion N: PASS|FAIL`` line to the terminal,
then asserts.
"""

import time

import pytest

from twosorted import suites
from twosorted.kernel import DEFINING_AXIOMS, FUNCTOR_POOL
from twosorted.kernel.axioms import sweep


@pytest.fixture
def verdict(capsys):
    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
        assert ok, detail

    return emit


def _suite_detail(r: suites.SuiteReport) -> str:
    s = f"{r.name}: {r.passed} passed, {r.failed} failed"
    return s if r.ok else f"{s}; first: {r.first_counterexample}"


def test_criterion_1_defining_axioms(verdict):
    t0 = time.perf_counter()
    failures = sweep(max_arg=40, pool=FUNCTOR_POOL)
    elapsed = time.perf_counter() - t0
    bad = {c: v[:1] for c, v in failures.items() if v}
    ok = len(failures) == 26 and set(failures) == set(DEFINING_AXIOMS) and not bad and elapsed < 60
    verdict(1, ok, f"26 constants, args 0..40, {len(FUNCTOR_POOL)} functors, {elapsed:.1f}s, failing: {bad or 'none'}")


def test_criterion_2_codec(verdict):
    r = suites.codec_suite(cases=1000, seed=2)
    verdict(2, r.ok and r.passed >= 1000 + 13 * len(FUNCTOR_POOL), _suite_detail(r))


def test_criterion_3_char_term(verdict):
    r = suites.char_term_suite(cases=500, seed=3, hi=5)
    verdict(3, r.ok and r.passed == 500, _suite_detail(r))


def test_criterion_4_witnesses(verdict):
    r = suites.witness_suite(cases=500, seed=4)
    verdict(4, r.ok and r.passed == 1000, _suite_detail(r))


def test_criterion_5_rec_translation(verdict):
    r = suites.rec_translate_suite(cases=300, seed=5, semantic=200)
    verdict(5, r.ok and r.passed == 500, _suite_detail(r))


def test_criterion_6_lambda_translation(verdict):
    r = suites.lambda_translate_suite(cases=500, seed=6, semantic=200)
    verdict(6, r.ok and r.passed == 700, _suite_detail(r))


def test_criterion_7_schema_roundtrip(verdict):
    r = suites.schema_roundtrip_suite(cases=300, seed=7, adversarial=100)
    n = 300 * len(suites.SchemaId) + 100
    verdict(7, r.ok and r.passed == n, _suite_detail(r))


def test_criterion_8_definitional_extension(verdict):
    r = suites.definitional_suite(cases=100, seed=8, max_arg=8)
    verdict(8, r.ok and r.passed == 100, _suite_detail(r))


def test_criterion_9_rec_axiom(verdict):
    r = suites.rec_axiom_suite(hi=12, seed=9)
    n = 13 * 13 * (len(suites.BOUNDED_POOL) + len(suites.STEP_POOL))
    verdict(9, r.ok and r.passed == n, _suite_detail(r))
