"""Satake parameter sets and unramified local L-factors."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Iterator, Sequence, Union

from .exactalg import (
    ONE_MONO,
    FactoredLFunction,
    LaurentMonomial,
    Rational,
    as_monomial,
    rf_equal,
)

GROUP_KINDS = ("Sp", "SO", "GL")


@dataclass(frozen=True)
class SatakeSet:
    """Multiset of pure monomials (symbols, rationals, or symbols times powers of X/T)."""

    entries: tuple

    def __post_init__(self):
        ents = tuple(as_monomial(e) for e in self.entries)
        if not ents:
            raise ValueError("a Satake set must be nonempty")
        for e in ents:
            if e.coeff == 0:
                raise ValueError("Satake parameters must be nonzero")
        object.__setattr__(self, "entries", ents)

    @classmethod
    def of(cls, *items: Union[str, Rational, LaurentMonomial]) -> "SatakeSet":
        return cls(tuple(items))

    @classmethod
    def symbols(cls, prefix: str, k: int) -> "SatakeSet":
        return cls(tuple(LaurentMonomial.var(f"{prefix}{i}") for i in range(1, k + 1)))

    @classmethod
    def values(cls, values: Iterable[Rational | str]) -> "SatakeSet":
        return cls(tuple(LaurentMonomial.const(Fraction(v)) for v in values))

    @classmethod
    def parse(cls, text: str) -> "SatakeSet":
        """``"x1,x2"``, ``"3/2,2/3"`` or a JSON descriptor."""
        text = text.strip()
        if text.startswith("{"):
            return cls.from_json(json.loads(text))
        return cls(tuple(LaurentMonomial.parse(t) for t in text.split(",")))

    @classmethod
    def from_json(cls, obj: dict) -> "SatakeSet":
        if "symbols" in obj:
            return cls(tuple(LaurentMonomial.parse(s) for s in obj["symbols"]))
        if "values" in obj:
            return cls.values(obj["values"])
        raise ValueError("Satake descriptor needs 'symbols' or 'values'")

    def to_json(self) -> dict:
        if self.is_numeric:
            return {"values": [str(e.coeff) for e in self.entries]}
        return {"symbols": [str(e) for e in self.entries]}

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[LaurentMonomial]:
        return iter(self.entries)

    def __add__(self, other: "SatakeSet") -> "SatakeSet":
        return SatakeSet(self.entries + other.entries)

    @property
    def is_numeric(self) -> bool:
        return all(e.is_constant for e in self.entries)

    def inverse(self) -> "SatakeSet":
        return SatakeSet(tuple(e.inverse() for e in self.entries))

    def scaled(self, m: LaurentMonomial) -> "SatakeSet":
        return SatakeSet(tuple(e * m for e in self.entries))

    def substitute(self, mapping) -> "SatakeSet":
        return SatakeSet(tuple(e.substitute(mapping) for e in self.entries))

    def product(self) -> LaurentMonomial:
        out = ONE_MONO
        for e in self.entries:
            out = out * e
        return out

    def multiset(self) -> dict:
        counts: dict = {}
        for e in self.entries:
            counts[e] = counts.get(e, 0) + 1
        return counts

    def __str__(self) -> str:
        return "{" + ", ".join(map(str, self.entries)) + "}"


@dataclass(frozen=True)
class ArgForm:
    """The L-argument ``mu*s + nu`` with ``nu`` stored doubled.

    Rendered as the monomial ``X^mu * T^(2 nu)``; ``mu`` may be negative (``-ks``).
    """

    mu: int
    two_nu: int = 0

    @classmethod
    def parse(cls, text: str) -> "ArgForm":
        text = text.strip()
        if text.startswith("{"):
            obj = json.loads(text)
            return cls(int(obj["mu"]), int(obj["two_nu"]))
        parts = text.split(",")
        if len(parts) != 2:
            raise ValueError(f"argument must be MU,TWO_NU, got {text!r}")
        return cls(int(parts[0]), int(parts[1]))

    def to_json(self) -> dict:
        return {"mu": self.mu, "two_nu": self.two_nu}

    @property
    def nu(self) -> Fraction:
        return Fraction(self.two_nu, 2)

    def monomial(self) -> LaurentMonomial:
        return LaurentMonomial.make(1, X=self.mu, T=self.two_nu)

    def shift(self, two_dnu: int) -> "ArgForm":
        return ArgForm(self.mu, self.two_nu + two_dnu)

    def __str__(self) -> str:
        nu = self.nu
        s = f"{self.mu}s" if self.mu else ""
        if nu or not s:
            s += f"{'+' if nu >= 0 and s else ''}{nu}"
        return s


def argform(mu: int, nu: Rational) -> ArgForm:
    two = Fraction(nu) * 2
    if two.denominator != 1:
        raise ValueError("the constant term must be a half-integer")
    return ArgForm(mu, int(two))


@dataclass(frozen=True)
class GroupData:
    kind: str
    n: int

    def __post_init__(self):
        kind = {"sp": "Sp", "so": "SO", "gl": "GL"}.get(self.kind.lower())
        if kind is None:
            raise ValueError(f"unknown group kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        if self.n < 1:
            raise ValueError("rank n must be positive")

    @property
    def N(self) -> int:
        return {"Sp": 2 * self.n + 1, "SO": 2 * self.n, "GL": self.n}[self.kind]

    def alpha(self, k: int) -> int:
        return {"Sp": 2 * k * self.n + 1, "SO": 2 * k * self.n - 1, "GL": k * self.n}[self.kind]

    @property
    def is_classical(self) -> bool:
        return self.kind in ("Sp", "SO")

    def __str__(self) -> str:
        return {"Sp": f"Sp_{2 * self.n}", "SO": f"SO_{2 * self.n}", "GL": f"GL_{self.n}"}[self.kind]


def _require_classical(group: GroupData):
    if not group.is_classical:
        raise ValueError(f"{group} is not Sp or SO")


def _argmono(a: ArgForm | LaurentMonomial) -> LaurentMonomial:
    return a.monomial() if isinstance(a, ArgForm) else a


# ---------------------------------------------------------------------------
# L-factor constructors


def l_rankin_selberg(A: SatakeSet, B: SatakeSet, arg: ArgForm) -> FactoredLFunction:
    m = _argmono(arg)
    return FactoredLFunction.euler(a * b * m for a in A for b in B)


def l_standard(A: SatakeSet, arg: ArgForm) -> FactoredLFunction:
    m = _argmono(arg)
    return FactoredLFunction.euler(a * m for a in A)


def l_sym2(A: SatakeSet, arg: ArgForm) -> FactoredLFunction:
    m = _argmono(arg)
    return FactoredLFunction.euler(a * b * m for a, b in combinations_with_replacement(A.entries, 2))


def l_wedge2(A: SatakeSet, arg: ArgForm) -> FactoredLFunction:
    m = _argmono(arg)
    return FactoredLFunction.euler(a * b * m for a, b in combinations(A.entries, 2))


def lift_to_gl(group: GroupData, pi_params: SatakeSet) -> SatakeSet:
    """Transfer a Siegel-Levi parameter of Sp_2n / SO_2n to GL_N."""
    _require_classical(group)
    if len(pi_params) != group.n:
        raise ValueError(f"expected {group.n} parameters, got {len(pi_params)}")
    middle = (ONE_MONO,) if group.kind == "Sp" else ()
    inv = tuple(a.inverse() for a in reversed(pi_params.entries))
    return SatakeSet(pi_params.entries + middle + inv)


def siegel_sides(group: GroupData, pi_n: SatakeSet, tau: SatakeSet, arg: ArgForm):
    lhs = l_rankin_selberg(lift_to_gl(group, pi_n), tau, arg)
    rhs = l_rankin_selberg(pi_n, tau, arg) * l_rankin_selberg(pi_n.inverse(), tau, arg)
    if group.kind == "Sp":
        rhs = rhs * l_standard(tau, arg)
    return lhs, rhs


def siegel_factorization_check(group: GroupData, pi_n: SatakeSet, tau: SatakeSet, arg: ArgForm) -> bool:
    return rf_equal(*siegel_sides(group, pi_n, tau, arg))


def gamma_unramified(p: Union[str, LaurentMonomial], tau: SatakeSet, k: int) -> FactoredLFunction:
    """``gamma(ks+1/2, pi^{-1} x tau) = L(-ks+1/2, pi x tau^v) / L(ks+1/2, pi^{-1} x tau)``.

    The epsilon factor is 1 for unramified data.
    """
    p = as_monomial(p)
    num = l_rankin_selberg(SatakeSet.of(p), tau.inverse(), ArgForm(-k, 1))
    den = l_rankin_selberg(SatakeSet.of(p.inverse()), tau, ArgForm(k, 1))
    return num / den


def unitary_regularity_check(tau_values: Sequence[Rational], q: Rational) -> bool:
    """Sufficient condition |chi_i / chi_j| < q for nonvanishing of the (k,c) functional."""
    q = Fraction(q)
    if q <= 1:
        raise ValueError("q must exceed 1")
    vals = [Fraction(v) for v in tau_values]
    if any(v == 0 for v in vals):
        raise ValueError("Satake values must be nonzero")
    return all(abs(a / b) < q for i, a in enumerate(vals) for j, b in enumerate(vals) if i != j)
