import pytest

from lcalc import suites
from lcalc.exactalg import FactoredLFunction


def test_case_rng_is_order_independent():
    a = suites.Case("x.y", {"k": 1}, lambda m, r: None)
    b = suites.Case("x.y", {"k": 2}, lambda m, r: None)
    assert a.rng(3).random() == a.rng(3).random()
    assert a.rng(3).random() != b.rng(3).random()
    assert a.digest != b.digest


def test_report_totals_and_sorting():
    bad = suites.equality_case("z.bad", {}, lambda: (FactoredLFunction.parse("(1 - X)^-1"),
                                                     FactoredLFunction.one()))
    good = suites.predicate_case("a.good", {}, lambda: True)
    results = suites.run_cases([bad, good], suites.SYMBOLIC, 0)
    assert [r.identity for r in results] == ["a.good", "z.bad"]
    assert results[1].status == "fail" and results[1].witness


def test_numeric_mode_catches_bad_identity():
    bad = suites.equality_case("z.bad", {}, lambda: (FactoredLFunction.parse("(1 - x*X)^-1"),
                                                     FactoredLFunction.parse("(1 - x*X^2)^-1")))
    (res,) = suites.run_cases([bad], suites.NUMERIC, 0)
    assert res.status == "fail"


def test_errors_become_failures():
    def boom(mode, rng):
        raise ValueError("nope")

    (res,) = suites.run_cases([suites.Case("e.rr", {}, boom)], suites.SYMBOLIC, 0)
    assert res.status == "fail" and "nope" in res.witness


@pytest.mark.parametrize("suite", suites.SUITES)
def test_each_suite_passes_at_small_bounds(suite):
    report = suites.run_suite(suite, seed=1, max_n=2, max_k=2, trunc=5)
    assert report.ok, [c for c in report.cases if c.status != "pass"]


def test_numeric_suite_passes():
    report = suites.run_suite("doubling", seed=2, max_n=4, max_k=3, trunc=6, numeric=True)
    assert report.ok
    assert report.mode == "numeric"


def test_unknown_suite():
    with pytest.raises(ValueError):
        suites.build_cases("bogus", max_n=1, max_k=1, trunc=1)
