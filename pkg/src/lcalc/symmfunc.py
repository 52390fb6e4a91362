"""Symmetric polynomials, unramified Whittaker values, and generating-series oracles."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from .exactalg import (
    ONE_MONO,
    FactoredLFunction,
    LaurentMonomial,
    LaurentPoly,
    X,
    TruncatedSeries,
    series_expand,
)
from .satake import ArgForm, SatakeSet, l_rankin_selberg


@dataclass(frozen=True)
class DominantWeight:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"{parts} is not weakly decreasing")
        object.__setattr__(self, "parts", parts)

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)


def is_dominant(lam: Sequence[int]) -> bool:
    return all(a >= b for a, b in zip(lam, lam[1:]))


def complete_homogeneous(m: int, vars: SatakeSet) -> LaurentPoly:
    """Sum of all degree-``m`` monomials in the entries of ``vars``."""
    if m < 0:
        return LaurentPoly.zero()
    if m == 0:
        return LaurentPoly.const(1)
    acc: dict = {}
    for combo in combinations_with_replacement(vars.entries, m):
        mono = ONE_MONO
        for e in combo:
            mono = mono * e
        acc[mono.exps] = acc.get(mono.exps, 0) + mono.coeff
    return LaurentPoly(acc)


def schur(lam: Sequence[int] | DominantWeight, vars: SatakeSet) -> LaurentPoly:
    """Schur polynomial via the Jacobi-Trudi determinant ``det(h_{lam_i - i + j})``."""
    parts = lam.parts if isinstance(lam, DominantWeight) else tuple(lam)
    k = len(vars)
    if len(parts) > k:
        if any(parts[k:]):
            return LaurentPoly.zero()
        parts = parts[:k]
    parts = tuple(parts) + (0,) * (k - len(parts))
    if not is_dominant(parts):
        raise ValueError(f"{parts} is not a partition")
    if parts and parts[-1] < 0:
        raise ValueError("schur needs non-negative parts; use shintani_whittaker for twists")
    ell = sum(1 for p in parts if p)
    if ell == 0:
        return LaurentPoly.const(1)

    hs: dict[int, LaurentPoly] = {}

    def h(m: int) -> LaurentPoly:
        if m not in hs:
            hs[m] = complete_homogeneous(m, vars)
        return hs[m]

    # Laplace expansion along rows, memoized on the set of used columns
    @lru_cache(maxsize=None)
    def minor(row: int, used: frozenset) -> LaurentPoly:
        if row == ell:
            return LaurentPoly.const(1)
        total = LaurentPoly.zero()
        sign = 1
        for j in range(ell):
            if j in used:
                continue
            entry = h(parts[row] - row + j)
            if not entry.is_zero():
                term = entry * minor(row + 1, used | {j})
                total = total + (term if sign > 0 else -term)
            sign = -sign
        return total

    return minor(0, frozenset())


def modulus_exponent(lam: Sequence[int]) -> int:
    """Exponent of ``T`` in ``delta_B^{1/2}(diag(varpi^lam))`` for GL_k."""
    k = len(lam)
    return sum(l * (k + 1 - 2 * i) for i, l in enumerate(lam, start=1))


def shintani_whittaker(tau: SatakeSet, lam: Sequence[int]) -> LaurentPoly:
    """Normalized unramified Whittaker value ``W(diag(varpi^lam))`` of GL_k.

    Equals ``delta_B^{1/2}(varpi^lam) * s_lam(t_tau)`` for dominant ``lam`` and 0
    otherwise.
    """
    lam = tuple(int(x) for x in lam)
    if len(lam) != len(tau):
        raise ValueError("weight length must equal the number of Satake parameters")
    if not is_dominant(lam):
        return LaurentPoly.zero()
    shift = lam[-1]
    base = schur(tuple(l - shift for l in lam), tau)
    twist = tau.product() ** shift * LaurentMonomial.make(1, T=modulus_exponent(lam))
    return base * LaurentPoly.from_monomial(twist)


def rs_series_sides(params: SatakeSet, scale: LaurentMonomial, grading: str, D: int):
    if scale.degree(grading) != 1:
        raise ValueError(f"scale {scale} must contain {grading} to the first power")
    if any(e.degree(grading) for e in params):
        raise ValueError(f"{grading} must not occur in the parameters")
    s = LaurentPoly.from_monomial(scale)
    lhs = TruncatedSeries.from_terms(
        (complete_homogeneous(m, params) * s ** m for m in range(D + 1)), grading, D
    )
    rhs = series_expand(FactoredLFunction.euler(a * scale for a in params), grading, D)
    return lhs, rhs


def rs_series_check(params: SatakeSet, scale: LaurentMonomial, grading: str, D: int) -> bool:
    """``sum_m h_m(params) scale^m == prod (1 - a*scale)^{-1}`` up to degree ``D``."""
    lhs, rhs = rs_series_sides(params, scale, grading, D)
    return lhs == rhs


def induced_params(tau: SatakeSet, tau_prime: SatakeSet, k: int) -> SatakeSet:
    """Satake parameters of ``Ind(|det|^{ks} tau'^v (x) |det|^{-ks} tau^v)`` on GL_2k."""
    if len(tau) != k or len(tau_prime) != k:
        raise ValueError(f"both parameter sets must have size {k}")
    up = LaurentMonomial.make(1, X=k)
    return tau_prime.inverse().scaled(up) + tau.inverse().scaled(up.inverse())


def cauchy_sides(xs: SatakeSet, ys: SatakeSet, D: int):
    """Truncated Cauchy identity: ``sum_lam s_lam(x) s_lam(y) X^|lam|`` vs the Euler product."""
    ell = min(len(xs), len(ys))
    terms = []
    for size in range(D + 1):
        xm = LaurentPoly.from_monomial(LaurentMonomial.make(1, X=size))
        for lam in partitions_of(size, ell):
            terms.append(schur(lam, xs) * schur(lam, ys) * xm)
    lhs = TruncatedSeries.from_terms(terms, X, D)
    rhs = series_expand(l_rankin_selberg(xs, ys, ArgForm(1, 0)), X, D)
    return lhs, rhs


def partitions_of(n: int, max_parts: int | None = None, max_part: int | None = None):
    """Partitions of ``n`` in reverse-lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    if max_parts == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, None if max_parts is None else max_parts - 1, first):
            yield (first,) + rest


def count_ssyt(shape: Sequence[int], max_entry: int) -> int:
    """Brute-force count of semistandard tableaux of ``shape`` with entries ``1..max_entry``."""
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    filling: dict = {}

    def place(i: int) -> int:
        if i == len(cells):
            return 1
        r, c = cells[i]
        lo = 1
        if c > 0:
            lo = max(lo, filling[(r, c - 1)])
        if r > 0:
            lo = max(lo, filling[(r - 1, c)] + 1)
        total = 0
        for v in range(lo, max_entry + 1):
            filling[(r, c)] = v
            total += place(i + 1)
        filling.pop((r, c), None)
        return total

    return place(0)
