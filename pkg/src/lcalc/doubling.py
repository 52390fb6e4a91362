"""Unramified zeta integrals of the doubling construction and their reduction identities.

All L-arguments are built directly in an "effective multiplier" lattice: a closed
form for ``GL_a`` evaluated at ``alpha*s/(k*a)`` is constructed with ``alpha`` as
its ``s``-coefficient, so no exponent is ever divided.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .exactalg import (
    FactoredLFunction,
    LaurentMonomial,
    LaurentPoly,
    Rational,
    TruncatedSeries,
    rf_equal,
    series_expand,
)
from .satake import (
    ArgForm,
    GroupData,
    SatakeSet,
    gamma_unramified,
    l_rankin_selberg,
    l_standard,
    l_sym2,
    l_wedge2,
    lift_to_gl,
)
from .symmfunc import induced_params, shintani_whittaker

ZETA = "zeta"

Point = Mapping[str, Rational]


@dataclass(frozen=True)
class ZetaClosedForm:
    group: GroupData
    n: int
    k: int
    alpha: int
    value: FactoredLFunction

    def __str__(self) -> str:
        return str(self.value)


def _group(group: Union[GroupData, str], n: int) -> GroupData:
    if isinstance(group, GroupData):
        if group.n != n:
            raise ValueError(f"group rank {group.n} does not match n={n}")
        return group
    return GroupData(group, n)


def _classical(group, n) -> GroupData:
    g = _group(group, n)
    if not g.is_classical:
        raise ValueError(f"{g} is not Sp or SO")
    return g


def _check_k(tau: SatakeSet, k: int):
    if len(tau) != k:
        raise ValueError(f"tau must have {k} parameters, got {len(tau)}")


def _rs(A: SatakeSet, B: SatakeSet, mu: int, two_nu: int) -> FactoredLFunction:
    return l_rankin_selberg(A, B, ArgForm(mu, two_nu))


# ---------------------------------------------------------------------------
# GL_n x GL_k


def d_gl_reduction(a: int, b: int, k: int, tau: SatakeSet, tau_prime: SatakeSet,
                   alpha: int) -> FactoredLFunction:
    """``prod_{j<=b} L(2 alpha s + j, tau x tau'^v) / L(2 alpha s + a + j, tau x tau'^v)``."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    tpv = tau_prime.inverse()
    out = FactoredLFunction.one()
    for j in range(1, b + 1):
        out = out * _rs(tau, tpv, 2 * alpha, 2 * j) / _rs(tau, tpv, 2 * alpha, 2 * (a + j))
    return out


def check_central_characters(tau: SatakeSet, tau_prime: SatakeSet):
    """Numeric data must satisfy ``prod(tau) * prod(tau') == 1``; symbolic data is not checked."""
    if tau.is_numeric and tau_prime.is_numeric:
        prod = (tau.product() * tau_prime.product()).coeff
        if prod != 1:
            raise ValueError(f"central characters are not inverse (product {prod})")


def z_gl_closed(n: int, k: int, pi: SatakeSet, tau: SatakeSet, tau_prime: SatakeSet,
                alpha: int | None = None) -> ZetaClosedForm:
    """Unramified GL_n x GL_k integral.

    ``L(a s+1/2, pi^v x tau) L(a s+1/2, pi x tau'^v) / prod_{j<=n} L(2 a s+j, tau x tau'^v)``
    with ``a = alpha`` (default ``k*n``).
    """
    if len(pi) != n:
        raise ValueError(f"pi must have {n} parameters, got {len(pi)}")
    _check_k(tau, k)
    _check_k(tau_prime, k)
    check_central_characters(tau, tau_prime)
    if alpha is None:
        alpha = k * n
    tpv = tau_prime.inverse()
    value = _rs(pi.inverse(), tau, alpha, 1) * _rs(pi, tpv, alpha, 1)
    for j in range(1, n + 1):
        value = value / _rs(tau, tpv, 2 * alpha, 2 * j)
    return ZetaClosedForm(GroupData("GL", n), n, k, alpha, value)


def gl_reduction_sides(n: int, a: int, b: int, k: int, pi_a: SatakeSet, pi_b: SatakeSet,
                       tau: SatakeSet, tau_prime: SatakeSet):
    if a + b != n:
        raise ValueError(f"a + b = {a + b} differs from n = {n}")
    alpha = k * n
    lhs = z_gl_closed(n, k, pi_a + pi_b, tau, tau_prime).value
    rhs = (
        d_gl_reduction(a, b, k, tau, tau_prime, alpha)
        * z_gl_closed(a, k, pi_a, tau, tau_prime, alpha=alpha).value
        * z_gl_closed(b, k, pi_b, tau, tau_prime, alpha=alpha).value
    )
    return lhs, rhs


def verify_gl_reduction(n: int, a: int, b: int, k: int, pi_a: SatakeSet, pi_b: SatakeSet,
                        tau: SatakeSet, tau_prime: SatakeSet) -> bool:
    return rf_equal(*gl_reduction_sides(n, a, b, k, pi_a, pi_b, tau, tau_prime))


def gl_associativity_sides(k: int, pi_a: SatakeSet, pi_b: SatakeSet, pi_c: SatakeSet,
                           tau: SatakeSet, tau_prime: SatakeSet):
    """Split ``n = a+b+c`` as ``(a, b+c)`` then ``(b, c)``, and as ``(a+b, c)`` then ``(a, b)``."""
    a, b, c = len(pi_a), len(pi_b), len(pi_c)
    alpha = k * (a + b + c)

    def z(pi):
        return z_gl_closed(len(pi), k, pi, tau, tau_prime, alpha=alpha).value

    def d(x, y):
        return d_gl_reduction(x, y, k, tau, tau_prime, alpha)

    left = d(a, b + c) * z(pi_a) * d(b, c) * z(pi_b) * z(pi_c)
    right = d(a + b, c) * d(a, b) * z(pi_a) * z(pi_b) * z(pi_c)
    return left, right


# ---------------------------------------------------------------------------
# Sp_2n / SO_2n x GL_k


def d_tau_closed(group, n: int, k: int, tau: SatakeSet, alpha: int | None = None) -> FactoredLFunction:
    """Closed form of the intertwining constant ``d_tau(s)``."""
    g = _classical(group, n)
    _check_k(tau, k)
    if alpha is None:
        alpha = g.alpha(k)
    out = FactoredLFunction.one()
    if g.kind == "Sp":
        out = out * gk_standard_closed(n, tau, alpha)
    fl, cl = n // 2, (n + 1) // 2
    for j in range(1, fl + 1):
        out = out * l_sym2(tau, ArgForm(2 * alpha, 4 * j)) \
            / l_sym2(tau, ArgForm(2 * alpha, 2 * (2 * j + 2 * n - 2 * fl - 1)))
    for j in range(1, cl + 1):
        out = out * l_wedge2(tau, ArgForm(2 * alpha, 2 * (2 * j - 1))) \
            / l_wedge2(tau, ArgForm(2 * alpha, 2 * (2 * j + 2 * n - 2 * cl)))
    return out


def gk_standard_raw(n: int, tau: SatakeSet, alpha: int) -> FactoredLFunction:
    """``prod_i prod_{j<=n} L(alpha s+j-1/2, chi_i) / L(alpha s+j+1/2, chi_i)``, unsimplified."""
    out = FactoredLFunction.one()
    for chi in tau:
        single = SatakeSet.of(chi)
        for j in range(1, n + 1):
            out = out * l_standard(single, ArgForm(alpha, 2 * j - 1)) \
                / l_standard(single, ArgForm(alpha, 2 * j + 1))
    return out


def gk_standard_closed(n: int, tau: SatakeSet, alpha: int) -> FactoredLFunction:
    return l_standard(tau, ArgForm(alpha, 1)) / l_standard(tau, ArgForm(alpha, 2 * n + 1))


def gk_exterior_raw(n: int, tau: SatakeSet, alpha: int) -> FactoredLFunction:
    """Rank-one Gindikin-Karpelevich contributions of the exterior-square part."""
    chis = tau.entries
    out = FactoredLFunction.one()
    for i in range(len(chis)):
        for i2 in range(i + 1, len(chis)):
            pair = SatakeSet.of(chis[i] * chis[i2])
            for j in range(1, n + 1):
                for j2 in range(1, n + 1):
                    out = out * l_standard(pair, ArgForm(2 * alpha, 2 * (j + j2 - 1))) \
                        / l_standard(pair, ArgForm(2 * alpha, 2 * (j + j2)))
    for chi in chis:
        square = SatakeSet.of(chi * chi)
        for j1 in range(1, n + 1):
            for j2 in range(j1 + 1, n + 1):
                out = out * l_standard(square, ArgForm(2 * alpha, 2 * (j1 + j2 - 1))) \
                    / l_standard(square, ArgForm(2 * alpha, 2 * (j1 + j2)))
    return out


def d_tau_gk(group, n: int, k: int, tau: SatakeSet, alpha: int | None = None) -> FactoredLFunction:
    """``d_tau(s)`` as the raw product of rank-one Gindikin-Karpelevich factors."""
    g = _classical(group, n)
    _check_k(tau, k)
    if alpha is None:
        alpha = g.alpha(k)
    out = gk_exterior_raw(n, tau, alpha)
    if g.kind == "Sp":
        out = gk_standard_raw(n, tau, alpha) * out
    return out


def z_classical_closed(group, n: int, k: int, pi_n: SatakeSet, tau: SatakeSet,
                       alpha: int | None = None) -> ZetaClosedForm:
    """Unramified ``G x GL_k`` integral for ``G = Sp_2n`` or ``SO_2n``.

    ``pi_n`` are the Siegel-Levi parameters; the GL_N parameters come from
    :func:`lift_to_gl`.
    """
    g = _classical(group, n)
    _check_k(tau, k)
    if alpha is None:
        alpha = g.alpha(k)
    value = l_rankin_selberg(lift_to_gl(g, pi_n), tau, ArgForm(alpha, 1))
    if g.kind == "Sp":
        value = value / l_standard(tau, ArgForm(alpha, 2 * n + 1))
    for j in range(1, n + 1):
        value = value / l_wedge2(tau, ArgForm(2 * alpha, 4 * j)) \
            / l_sym2(tau, ArgForm(2 * alpha, 2 * (2 * j - 1)))
    return ZetaClosedForm(g, n, k, alpha, value)


def classical_reduction_sides(group, n: int, k: int, pi_n: SatakeSet, tau: SatakeSet,
                              alpha: int | None = None):
    """``Z_G = d_tau * Z_{GL_n}(tau, tau^v)`` with the GL form built at multiplier ``alpha``.

    ``alpha`` overrides only the left-hand side (used for mutation tests).
    """
    g = _classical(group, n)
    a = g.alpha(k)
    lhs = z_classical_closed(g, n, k, pi_n, tau, alpha=a if alpha is None else alpha).value
    rhs = d_tau_closed(g, n, k, tau) * z_gl_closed(n, k, pi_n, tau, tau.inverse(), alpha=a).value
    return lhs, rhs


def verify_classical_reduction(group, n: int, k: int, pi_n: SatakeSet, tau: SatakeSet) -> bool:
    return rf_equal(*classical_reduction_sides(group, n, k, pi_n, tau))


# ---------------------------------------------------------------------------
# n = 1: the gamma relation and the Whittaker series


def _param(p) -> LaurentMonomial:
    return p if isinstance(p, LaurentMonomial) else LaurentMonomial.var(p)


def psi_closed(k: int, p, tau: SatakeSet, tau_prime: SatakeSet, zeta: bool = False) -> FactoredLFunction:
    """``L(-zeta-ks+1/2, pi x tau^v) L(-zeta+ks+1/2, pi x tau'^v) / L(2ks+1, tau x tau'^v)``.

    With ``zeta=True`` the variable ``zeta`` stands for ``q^{-zeta}``; otherwise zeta = 0.
    """
    _check_k(tau, k)
    _check_k(tau_prime, k)
    pi = SatakeSet.of(_param(p))
    shift = LaurentMonomial.var(ZETA, -1) if zeta else LaurentMonomial.const(1)
    tpv = tau_prime.inverse()
    return (
        l_rankin_selberg(pi, tau.inverse(), ArgForm(-k, 1).monomial() * shift)
        * l_rankin_selberg(pi, tpv, ArgForm(k, 1).monomial() * shift)
        / _rs(tau, tpv, 2 * k, 2)
    )


def psi_whittaker_series(k: int, p: str, tau: SatakeSet, tau_prime: SatakeSet, D: int,
                         point: Point | None = None, normalized: bool = True) -> TruncatedSeries:
    """``Psi(0, s)`` summed from unramified Whittaker values, graded by ``p``.

    The term for ``a = varpi^m`` is ``W(diag(varpi^m, I)) * p^m * q^{m(k-1)}`` where
    ``W`` is the Casselman-Shalika value on the induced representation of GL_2k,
    scaled by ``W(I) = L(2ks+1, tau x tau'^v)^{-1}``.  ``point`` specializes every
    variable except ``p``.
    """
    params = induced_params(tau, tau_prime, k)
    if point is not None:
        params = params.substitute(point)
    norm = LaurentPoly.const(1)
    if normalized:
        inv = _rs(tau, tau_prime.inverse(), 2 * k, 2).inverse()
        if point is not None:
            inv = inv.substitute(point)
        num, den = inv.numerator_denominator()
        assert den == 1
        norm = num
    terms = []
    for m in range(D + 1):
        w = shintani_whittaker(params, (m,) + (0,) * (2 * k - 1))
        w = w * LaurentPoly.from_monomial(LaurentMonomial.make(1, T=m * (2 - 2 * k)) * LaurentMonomial.var(p, m))
        if point is not None:
            w = w.substitute(point)
        terms.append(w * norm)
    return TruncatedSeries.from_terms(terms, p, D)


def psi_series_sides(k: int, p: str, tau: SatakeSet, tau_prime: SatakeSet, D: int,
                     point: Point | None = None, normalized: bool = True):
    lhs = psi_whittaker_series(k, p, tau, tau_prime, D, point=point, normalized=normalized)
    closed = psi_closed(k, p, tau, tau_prime)
    if point is not None:
        closed = closed.substitute(point)
    return lhs, series_expand(closed, p, D)


def psi_series_check(k: int, p: str, tau: SatakeSet, tau_prime: SatakeSet, D: int,
                     point: Point | None = None) -> bool:
    lhs, rhs = psi_series_sides(k, p, tau, tau_prime, D, point=point)
    return lhs == rhs


def prop_gl1_sides(k: int, p, tau: SatakeSet, tau_prime: SatakeSet):
    pi = SatakeSet.of(_param(p))
    lhs = gamma_unramified(_param(p), tau, k) * z_gl_closed(1, k, pi, tau, tau_prime).value
    return lhs, psi_closed(k, p, tau, tau_prime)


def verify_prop_gl1(k: int, p, tau: SatakeSet, tau_prime: SatakeSet) -> bool:
    """``gamma(ks+1/2, pi^{-1} x tau) * Z(s) == Psi(0, s)`` for the GL_1 closed form."""
    return rf_equal(*prop_gl1_sides(k, p, tau, tau_prime))
