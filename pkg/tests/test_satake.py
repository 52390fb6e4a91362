import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lcalc.exactalg import FactoredLFunction, LaurentMonomial, rf_equal
from lcalc.satake import (
    ArgForm,
    GroupData,
    SatakeSet,
    argform,
    gamma_unramified,
    l_rankin_selberg,
    l_standard,
    l_sym2,
    l_wedge2,
    lift_to_gl,
    siegel_factorization_check,
    unitary_regularity_check,
)

F = FactoredLFunction.parse
S = SatakeSet.symbols
A10 = ArgForm(1, 0)


def test_rankin_selberg_examples():
    a = SatakeSet.of("a")
    assert l_rankin_selberg(a, a.inverse(), A10) == F("(1 - X)^-1")
    assert l_rankin_selberg(S("x", 2), SatakeSet.of(1), A10) == F("(1 - x1*X)^-1 * (1 - x2*X)^-1")
    sq = l_rankin_selberg(S("x", 2), S("x", 2), A10)
    assert sq == F("(1 - x1^2*X)^-1 * (1 - x1*x2*X)^-2 * (1 - x2^2*X)^-1")


def test_sym2_wedge2_examples():
    assert l_wedge2(SatakeSet.of("x"), ArgForm(3, 5)).is_one()
    assert l_wedge2(S("x", 2), A10) == F("(1 - x1*x2*X)^-1")
    assert l_sym2(S("x", 2), A10) == F("(1 - x1^2*X)^-1 * (1 - x1*x2*X)^-1 * (1 - x2^2*X)^-1")


@pytest.mark.parametrize("k", range(1, 7))
def test_sym2_times_wedge2(k):
    tau = S("x", k)
    assert rf_equal(l_sym2(tau, ArgForm(2, 3)) * l_wedge2(tau, ArgForm(2, 3)),
                    l_rankin_selberg(tau, tau, ArgForm(2, 3)))


def test_argform():
    arg = ArgForm.parse("3,1")
    assert arg.monomial() == LaurentMonomial.make(1, X=3, T=1)
    assert arg.nu == Fraction(1, 2)
    assert ArgForm.parse(json.dumps(arg.to_json())) == arg
    assert argform(-2, Fraction(1, 2)) == ArgForm(-2, 1)
    with pytest.raises(ValueError):
        argform(1, Fraction(1, 3))
    with pytest.raises(ValueError):
        ArgForm.parse("3")


def test_satake_descriptors():
    assert SatakeSet.parse('{"symbols":["x1","x2"]}') == S("x", 2)
    vals = SatakeSet.parse('{"values":["3/2","2/3"]}')
    assert vals.is_numeric and vals.product().coeff == 1
    assert SatakeSet.from_json(vals.to_json()) == vals
    with pytest.raises(ValueError):
        SatakeSet.parse("x,0")


def test_lift_examples():
    a = LaurentMonomial.var("a")
    assert lift_to_gl(GroupData("Sp", 1), SatakeSet.of(a)).entries == (a, LaurentMonomial.const(1), a.inverse())
    a1, a2 = S("a", 2).entries
    assert lift_to_gl(GroupData("SO", 2), S("a", 2)).entries == (a1, a2, a2.inverse(), a1.inverse())
    assert lift_to_gl(GroupData("Sp", 2), S("a", 2)).entries == (a1, a2, LaurentMonomial.const(1),
                                                                  a2.inverse(), a1.inverse())
    with pytest.raises(ValueError):
        lift_to_gl(GroupData("GL", 2), S("a", 2))


@given(st.sampled_from(["Sp", "SO"]), st.integers(1, 5))
def test_lift_is_self_dual(kind, n):
    lifted = lift_to_gl(GroupData(kind, n), S("b", n))
    assert len(lifted) == GroupData(kind, n).N
    assert lifted.multiset() == lifted.inverse().multiset()


@pytest.mark.parametrize("kind", ["Sp", "SO"])
@pytest.mark.parametrize("n,k", [(1, 1), (2, 2), (3, 2)])
def test_siegel_factorization(kind, n, k):
    assert siegel_factorization_check(GroupData(kind, n), S("b", n), S("x", k), ArgForm(5, 1))


def test_siegel_standard_factor_only_for_sp():
    g = GroupData("SO", 1)
    pi, tau = SatakeSet.of("b"), SatakeSet.of("x")
    wrong = l_rankin_selberg(pi, tau, A10) * l_rankin_selberg(pi.inverse(), tau, A10) * l_standard(tau, A10)
    assert not rf_equal(l_rankin_selberg(lift_to_gl(g, pi), tau, A10), wrong)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(-3, 3), st.integers(-3, 3))
def test_rankin_selberg_symmetric(ka, kb, mu, two_nu):
    a, b = S("x", ka), S("y", kb)
    assert l_rankin_selberg(a, b, ArgForm(mu, two_nu)) == l_rankin_selberg(b, a, ArgForm(mu, two_nu))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gamma_reflection(k):
    tau = S("x", k)
    g = gamma_unramified("p", tau, k)
    flip = {"X": LaurentMonomial.var("X", -1), "p": LaurentMonomial.var("p", -1)}
    flip.update({str(e): e.inverse() for e in tau})
    assert rf_equal(g.substitute(flip), g.inverse())


def test_gamma_k1():
    assert gamma_unramified("p", SatakeSet.of("x"), 1) == F("(1 - p^-1*x*T*X) * (1 - p*x^-1*T*X^-1)^-1")


def test_group_data():
    assert GroupData("sp", 2).alpha(3) == 13
    assert GroupData("so", 2).alpha(3) == 11
    assert GroupData("GL", 2).alpha(3) == 6
    with pytest.raises(ValueError):
        GroupData("so", 0)
    with pytest.raises(ValueError):
        GroupData("u", 1)


def test_unitary_regularity():
    assert unitary_regularity_check([1, 1], 3)
    assert not unitary_regularity_check([9, 1], 3)
    assert unitary_regularity_check([Fraction(3, 2), 1, Fraction(2, 3)], 4)
