import pytest
from hypothesis import given, settings, strategies as st

from lcalc.exactalg import LaurentMonomial, LaurentPoly, TruncatedSeries
from lcalc.satake import SatakeSet
from lcalc.symmfunc import (
    cauchy_sides,
    complete_homogeneous,
    count_ssyt,
    induced_params,
    modulus_exponent,
    partitions_of,
    rs_series_check,
    rs_series_sides,
    schur,
    shintani_whittaker,
)

P = LaurentPoly.parse
S = SatakeSet.symbols
XY = S("x", 2)


def test_complete_homogeneous():
    assert complete_homogeneous(1, XY) == P("x1 + x2")
    assert complete_homogeneous(2, XY) == P("x1^2 + x1*x2 + x2^2")
    assert complete_homogeneous(0, S("x", 5)) == P("1")


def test_schur_examples():
    assert schur((1,), XY) == P("x1 + x2")
    assert schur((1, 1), XY) == P("x1*x2")
    assert schur((2, 0), XY) == P("x1^2 + x1*x2 + x2^2")
    assert schur((1, 1, 1), XY) == LaurentPoly.zero()
    assert schur((2, 1), S("x", 3)) == P(
        "x1^2*x2 + x1^2*x3 + x1*x2^2 + 2*x1*x2*x3 + x1*x3^2 + x2^2*x3 + x2*x3^2")


def test_shintani_examples():
    assert shintani_whittaker(XY, (0, 0)) == P("1")
    assert shintani_whittaker(XY, (1, 0)) == P("x1*T + x2*T")
    assert shintani_whittaker(XY, (0, 1)) == LaurentPoly.zero()
    assert modulus_exponent((1, 0)) == 1


def test_shintani_twist_by_determinant():
    base = shintani_whittaker(XY, (2, 0))
    assert shintani_whittaker(XY, (3, 1)) == base * P("x1*x2")
    assert shintani_whittaker(XY, (-1, -1)) == P("x1^-1*x2^-1")


@settings(max_examples=30)
@given(st.integers(1, 4), st.integers(0, 5), st.data())
def test_schur_specializes_to_tableau_count(k, size, data):
    parts = list(partitions_of(size, k))
    lam = data.draw(st.sampled_from(parts))
    value = schur(lam, SatakeSet.values([1] * k))
    assert value == LaurentPoly.const(count_ssyt(lam, k))


@settings(max_examples=20)
@given(st.integers(1, 3), st.integers(0, 4), st.data())
def test_schur_stability(k, size, data):
    lam = data.draw(st.sampled_from(list(partitions_of(size, k))))
    more = S("x", k + 1)
    fewer = SatakeSet(more.entries[:k])
    assert schur(lam, more).substitute({f"x{k + 1}": 0}) == schur(lam, fewer)


def test_count_ssyt_small():
    assert count_ssyt((2, 1), 3) == 8
    assert count_ssyt((1, 1), 2) == 1
    assert count_ssyt((3,), 2) == 4


def test_rs_series_examples():
    assert rs_series_check(SatakeSet.of("x"), LaurentMonomial.make(1, p=1, X=1), "p", 8)
    assert rs_series_check(XY, LaurentMonomial.make(1, p=1, T=1, X=2), "p", 10)


def test_rs_series_detects_perturbed_h3():
    scale = LaurentMonomial.make(1, p=1, X=1)
    lhs, rhs = rs_series_sides(XY, scale, "p", 6)
    coeffs = list(lhs.coeffs)
    coeffs[3] = coeffs[3] + P("x1^3")
    assert TruncatedSeries("p", 6, tuple(coeffs)) != rhs
    assert lhs == rhs


@pytest.mark.parametrize("k", [1, 2, 3])
def test_cauchy(k):
    lhs, rhs = cauchy_sides(S("x", k), S("y", k), 6)
    assert lhs == rhs


def test_induced_params():
    x, y = SatakeSet.of("x"), SatakeSet.of("y")
    got = induced_params(x, y, 1)
    assert got.entries == (LaurentMonomial.make(1, y=-1, X=1), LaurentMonomial.make(1, x=-1, X=-1))
    two = induced_params(S("x", 2), S("y", 2), 2)
    assert sorted(e.degree("X") for e in two) == [-2, -2, 2, 2]


def test_partitions_of():
    assert list(partitions_of(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions_of(4, 2)) == [(4,), (3, 1), (2, 2)]
