import pytest

from twosorted import suites
from twosorted.errors import InputError
from twosorted.kernel import codec


@pytest.mark.parametrize("name", sorted(suites.SUITES))
def test_small_runs_pass(name):
    r = suites.run_suite(name, cases=8, seed=11)
    assert r.ok, r.first_counterexample
    assert r.passed > 0


@pytest.mark.parametrize("name", ["char-term", "schema-roundtrip", "lambda-translate"])
def test_deterministic(name):
    assert suites.run_suite(name, cases=5, seed=4) == suites.run_suite(name, cases=5, seed=4)


def test_unknown_suite():
    with pytest.raises(InputError):
        suites.run_suite("nope")


def test_report_json():
    r = suites.SuiteReport("x", 3, 1, 2, 1, "boom")
    assert r.to_json()["failed"] == "1" and not r.ok


def test_codec_suite_catches_broken_concat(monkeypatch):
    monkeypatch.setattr(codec, "concat", lambda a, b: a * b)
    r = suites.codec_suite(cases=50, seed=0)
    assert r.failed > 0 and r.first_counterexample


def test_rec_axiom_suite_catches_broken_iterate(monkeypatch):
    real = codec.course_of_values
    monkeypatch.setattr(codec, "course_of_values", lambda x, a, y: real(x, a, y) * 2)
    assert not suites.rec_axiom_suite(hi=3).ok


def test_char_term_suite_catches_negated_term(monkeypatch):
    from twosorted import decidable
    from twosorted.syntax import ConstApp

    real = decidable.char_term

    class Negated:
        def __init__(self, f):
            self.q = ConstApp("sgbar", (real(f).q,))

    monkeypatch.setattr(suites, "char_term", Negated)
    assert not suites.char_term_suite(cases=20, seed=0).ok
