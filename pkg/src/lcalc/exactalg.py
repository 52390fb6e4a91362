"""Exact Laurent polynomial arithmetic and factored Euler products.

Variables are plain strings.  Two names are reserved:

* ``T`` stands for ``q^{-1/2}`` (so ``q^{-1} = T^2``),
* ``X`` stands for ``q^{-s}``.

Every other identifier is a free parameter (Satake symbols and the like).
Coefficients are :class:`fractions.Fraction`; nothing here touches floats.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Mapping, Union

T = "T"
X = "X"
RESERVED = frozenset({T, X})

Rational = Union[int, Fraction]
Exps = tuple  # tuple[tuple[str, int], ...] sorted by var_key

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class PoleAtPoint(ArithmeticError):
    """An Euler factor with negative exponent vanished at the evaluation point."""


class ZeroAtPoint(ArithmeticError):
    """An Euler factor with positive exponent vanished during specialization."""


class SeriesError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.text = text
        self.pos = pos


@lru_cache(maxsize=None)
def var_key(name: str) -> tuple:
    # parameters first (lexicographic), then T, then X
    if name == T:
        return (1, "")
    if name == X:
        return (2, "")
    return (0, name)


def check_name(name: str) -> str:
    if not _IDENT.match(name):
        raise ValueError(f"invalid variable name {name!r}")
    return name


def _merge(a: Exps, b: Exps, sign: int = 1) -> Exps:
    if not b:
        return a
    if not a and sign == 1:
        return b
    d = dict(a)
    for v, e in b:
        s = d.get(v, 0) + sign * e
        if s:
            d[v] = s
        else:
            d.pop(v, None)
    return tuple(sorted(d.items(), key=lambda kv: var_key(kv[0])))


def _exps_from(mapping: Mapping[str, int]) -> Exps:
    return tuple(
        sorted(((check_name(v), int(e)) for v, e in mapping.items() if e),
               key=lambda kv: var_key(kv[0]))
    )


def _exps_sort_key(exps: Exps) -> tuple:
    return tuple((var_key(v), e) for v, e in exps)


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_exps(exps: Exps) -> str:
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in exps)


# ---------------------------------------------------------------------------
# monomials


@dataclass(frozen=True)
class LaurentMonomial:
    coeff: Fraction
    exps: Exps = ()

    def __post_init__(self):
        if not isinstance(self.coeff, Fraction):
            object.__setattr__(self, "coeff", Fraction(self.coeff))

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentMonomial":
        return cls(Fraction(1), _exps_from({name: power}))

    @classmethod
    def const(cls, c: Rational) -> "LaurentMonomial":
        return cls(Fraction(c))

    @classmethod
    def make(cls, coeff: Rational = 1, **powers: int) -> "LaurentMonomial":
        return cls(Fraction(coeff), _exps_from(powers))

    @classmethod
    def parse(cls, text: str) -> "LaurentMonomial":
        p = _Parser(text)
        m = p.monomial()
        p.expect_end()
        return m

    @property
    def is_constant(self) -> bool:
        return not self.exps

    @property
    def variables(self) -> frozenset:
        return frozenset(v for v, _ in self.exps)

    def degree(self, name: str) -> int:
        for v, e in self.exps:
            if v == name:
                return e
        return 0

    def without(self, *names: str) -> "LaurentMonomial":
        return LaurentMonomial(self.coeff, tuple(ve for ve in self.exps if ve[0] not in names))

    def __mul__(self, other):
        if isinstance(other, LaurentMonomial):
            return LaurentMonomial(self.coeff * other.coeff, _merge(self.exps, other.exps))
        if isinstance(other, (int, Fraction)):
            return LaurentMonomial(self.coeff * other, self.exps)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentMonomial):
            return LaurentMonomial(self.coeff / other.coeff, _merge(self.exps, other.exps, -1))
        if isinstance(other, (int, Fraction)):
            return LaurentMonomial(self.coeff / other, self.exps)
        return NotImplemented

    def __neg__(self):
        return LaurentMonomial(-self.coeff, self.exps)

    def __pow__(self, k: int) -> "LaurentMonomial":
        if k == 0:
            return ONE_MONO
        if self.coeff == 0 and k < 0:
            raise ZeroDivisionError("zero monomial to a negative power")
        return LaurentMonomial(self.coeff ** k, tuple((v, e * k) for v, e in self.exps))

    def inverse(self) -> "LaurentMonomial":
        return self ** -1

    def evaluate(self, assignment: Mapping[str, Rational]) -> Fraction:
        val = self.coeff
        for v, e in self.exps:
            x = Fraction(assignment[v])
            if x == 0 and e < 0:
                raise PoleAtPoint(f"{v}=0 in {self}")
            val *= x ** e
        return val

    def substitute(self, mapping: Mapping[str, Union["LaurentMonomial", Rational]]) -> "LaurentMonomial":
        out = LaurentMonomial(self.coeff)
        for v, e in self.exps:
            img = mapping.get(v)
            if img is None:
                out = out * LaurentMonomial(Fraction(1), ((v, e),))
            else:
                if not isinstance(img, LaurentMonomial):
                    img = LaurentMonomial.const(img)
                if img.coeff == 0 and e < 0:
                    raise PoleAtPoint(f"{v}=0 in {self}")
                out = out * img ** e
        return out

    def sort_key(self) -> tuple:
        return (_exps_sort_key(self.exps), self.coeff)

    def __str__(self) -> str:
        if not self.exps:
            return _fmt_rational(self.coeff)
        body = _fmt_exps(self.exps)
        if self.coeff == 1:
            return body
        if self.coeff == -1:
            return "-" + body
        return f"{_fmt_rational(self.coeff)}*{body}"

    def __repr__(self) -> str:
        return f"LaurentMonomial({self})"


ONE_MONO = LaurentMonomial(Fraction(1))


def as_monomial(x: Union[LaurentMonomial, str, Rational]) -> LaurentMonomial:
    if isinstance(x, LaurentMonomial):
        return x
    if isinstance(x, str):
        return LaurentMonomial.parse(x)
    return LaurentMonomial.const(x)


# ---------------------------------------------------------------------------
# polynomials


class LaurentPoly:
    """Sparse multivariate Laurent polynomial, ``{exponents: coefficient}``.

    Instances are treated as immutable once built.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exps, Fraction] | None = None, _trusted: bool = False):
        if _trusted:
            self._terms = terms
        else:
            self._terms = {}
            for k, c in (terms or {}).items():
                c = Fraction(c)
                if c:
                    self._terms[k] = self._terms.get(k, 0) + c
            self._terms = {k: c for k, c in self._terms.items() if c}
        self._hash = None

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls({}, _trusted=True)

    @classmethod
    def const(cls, c: Rational) -> "LaurentPoly":
        c = Fraction(c)
        return cls({(): c} if c else {}, _trusted=True)

    @classmethod
    def from_monomial(cls, m: LaurentMonomial) -> "LaurentPoly":
        return cls({m.exps: m.coeff} if m.coeff else {}, _trusted=True)

    @classmethod
    def from_monomials(cls, ms: Iterable[LaurentMonomial]) -> "LaurentPoly":
        acc: dict = {}
        for m in ms:
            acc[m.exps] = acc.get(m.exps, 0) + m.coeff
        return cls({k: c for k, c in acc.items() if c}, _trusted=True)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        p = _Parser(text)
        poly = p.polynomial()
        p.expect_end()
        return poly

    @staticmethod
    def coerce(x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, LaurentMonomial):
            return LaurentPoly.from_monomial(x)
        if isinstance(x, (int, Fraction)):
            return LaurentPoly.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- inspection
    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def terms(self) -> Iterator[LaurentMonomial]:
        for k in sorted(self._terms, key=_exps_sort_key):
            yield LaurentMonomial(self._terms[k], k)

    def items(self):
        return self._terms.items()

    def coefficient(self, m: LaurentMonomial | Exps) -> Fraction:
        key = m.exps if isinstance(m, LaurentMonomial) else m
        return self._terms.get(key, Fraction(0))

    @property
    def variables(self) -> frozenset:
        return frozenset(v for k in self._terms for v, _ in k)

    def degree_range(self, name: str) -> tuple[int, int]:
        degs = [dict(k).get(name, 0) for k in self._terms]
        if not degs:
            raise ValueError("zero polynomial has no degree")
        return min(degs), max(degs)

    def leading_term(self) -> LaurentMonomial | None:
        if not self._terms:
            return None
        k = max(self._terms, key=_exps_sort_key)
        return LaurentMonomial(self._terms[k], k)

    # -- arithmetic
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for k, c in b.items():
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LaurentPoly(out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                k = _merge(k1, k2)
                s = out.get(k, 0) + c1 * c2
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return LaurentPoly(out, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._terms) == 1:
                (ek, c), = self._terms.items()
                return LaurentPoly.from_monomial(LaurentMonomial(c, ek) ** k)
            raise ValueError("negative power of a non-monomial")
        result = LaurentPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, LaurentMonomial)):
            other = LaurentPoly.coerce(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- evaluation
    def evaluate(self, assignment: Mapping[str, Rational]) -> Fraction:
        return sum((LaurentMonomial(c, k).evaluate(assignment) for k, c in self._terms.items()),
                   Fraction(0))

    def substitute(self, mapping: Mapping[str, Union[LaurentMonomial, Rational]]) -> "LaurentPoly":
        return LaurentPoly.from_monomials(
            LaurentMonomial(c, k).substitute(mapping) for k, c in self._terms.items()
        )

    def split_by(self, name: str) -> dict[int, "LaurentPoly"]:
        """Group terms by their exponent of ``name``; the keys are dropped from the pieces."""
        groups: dict[int, dict] = {}
        for k, c in self._terms.items():
            d = 0
            rest = []
            for v, e in k:
                if v == name:
                    d = e
                else:
                    rest.append((v, e))
            groups.setdefault(d, {})[tuple(rest)] = c
        return {d: LaurentPoly(t, _trusted=True) for d, t in groups.items()}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = [str(m) for m in reversed(list(self.terms()))]
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"


# ---------------------------------------------------------------------------
# factored Euler products


def _canonical_factors(pairs: Iterable[tuple[LaurentMonomial, int]]) -> tuple[Fraction, dict]:
    """Merge equal keys, drop zero exponents, fold constant keys into a scalar."""
    scalar = Fraction(1)
    acc: dict[LaurentMonomial, int] = {}
    for m, e in pairs:
        if not e or m.coeff == 0:
            continue
        if m.is_constant:
            base = 1 - m.coeff
            if base == 0:
                if e < 0:
                    raise PoleAtPoint(f"constant factor (1 - {m})^{e}")
                raise ZeroAtPoint(f"constant factor (1 - {m})^{e}")
            scalar *= base ** e
            continue
        acc[m] = acc.get(m, 0) + e
    return scalar, {m: e for m, e in acc.items() if e}


@dataclass(frozen=True)
class FactoredLFunction:
    """``unit * prod (1 - M)^e`` with pure monomials ``M`` and integer exponents ``e``."""

    unit: LaurentMonomial = ONE_MONO
    factors: Mapping[LaurentMonomial, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.unit.coeff == 0:
            raise ValueError("unit must be nonzero")

    @classmethod
    def one(cls) -> "FactoredLFunction":
        return cls()

    @classmethod
    def from_factors(cls, pairs: Iterable[tuple[LaurentMonomial, int]],
                     unit: LaurentMonomial = ONE_MONO) -> "FactoredLFunction":
        scalar, facs = _canonical_factors(pairs)
        return cls(unit * scalar, facs)

    @classmethod
    def euler(cls, monomials: Iterable[LaurentMonomial]) -> "FactoredLFunction":
        """The L-factor ``prod (1 - M)^{-1}``."""
        return cls.from_factors((m, -1) for m in monomials)

    @classmethod
    def parse(cls, text: str) -> "FactoredLFunction":
        p = _Parser(text)
        f = p.factored()
        p.expect_end()
        return f

    # -- structure
    def __eq__(self, other) -> bool:
        if not isinstance(other, FactoredLFunction):
            return NotImplemented
        return self.unit == other.unit and dict(self.factors) == dict(other.factors)

    def __hash__(self) -> int:
        return hash((self.unit, frozenset(self.factors.items())))

    def sorted_factors(self) -> list[tuple[LaurentMonomial, int]]:
        return sorted(self.factors.items(), key=lambda me: me[0].sort_key())

    @property
    def variables(self) -> frozenset:
        vs = set(self.unit.variables)
        for m in self.factors:
            vs |= m.variables
        return frozenset(vs)

    def total_exponent(self) -> int:
        return sum(self.factors.values())

    def is_one(self) -> bool:
        return not self.factors and self.unit == ONE_MONO

    # -- arithmetic
    def __mul__(self, other):
        if isinstance(other, LaurentMonomial):
            return FactoredLFunction(self.unit * other, self.factors)
        if isinstance(other, (int, Fraction)):
            return FactoredLFunction(self.unit * other, self.factors)
        if not isinstance(other, FactoredLFunction):
            return NotImplemented
        facs = dict(self.factors)
        for m, e in other.factors.items():
            s = facs.get(m, 0) + e
            if s:
                facs[m] = s
            else:
                facs.pop(m, None)
        return FactoredLFunction(self.unit * other.unit, facs)

    __rmul__ = __mul__

    def inverse(self) -> "FactoredLFunction":
        return FactoredLFunction(self.unit.inverse(), {m: -e for m, e in self.factors.items()})

    def __truediv__(self, other):
        if isinstance(other, (LaurentMonomial, int, Fraction)):
            return FactoredLFunction(self.unit / other, self.factors)
        if not isinstance(other, FactoredLFunction):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if isinstance(other, (LaurentMonomial, int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, k: int) -> "FactoredLFunction":
        if k == 0:
            return FactoredLFunction()
        return FactoredLFunction(self.unit ** k, {m: e * k for m, e in self.factors.items()})

    # -- maps
    def substitute(self, mapping: Mapping[str, Union[LaurentMonomial, Rational]]) -> "FactoredLFunction":
        return FactoredLFunction.from_factors(
            ((m.substitute(mapping), e) for m, e in self.factors.items()),
            unit=self.unit.substitute(mapping),
        )

    def evaluate(self, assignment: Mapping[str, Rational]) -> Fraction:
        val = self.unit.evaluate(assignment)
        for m, e in self.factors.items():
            base = 1 - m.evaluate(assignment)
            if base == 0:
                if e < 0:
                    raise PoleAtPoint(f"(1 - {m}) vanishes")
                return Fraction(0)
            val *= base ** e
        return val

    def numerator_denominator(self) -> tuple[LaurentPoly, LaurentPoly]:
        """Expand into ``(unit * prod_{e>0}, prod_{e<0})`` polynomials."""
        num = LaurentPoly.from_monomial(self.unit)
        den = LaurentPoly.const(1)
        for m, e in self.sorted_factors():
            base = LaurentPoly({(): Fraction(1), m.exps: -m.coeff})
            if e > 0:
                num = num * base ** e
            else:
                den = den * base ** (-e)
        return num, den

    # -- rendering
    def __str__(self) -> str:
        parts = []
        if self.unit != ONE_MONO or not self.factors:
            parts.append(str(self.unit))
        for m, e in self.sorted_factors():
            if m.coeff < 0:
                body = f"(1 + {-m})"
            else:
                body = f"(1 - {m})"
            parts.append(body if e == 1 else f"{body}^{e}")
        return " * ".join(parts)

    def __repr__(self) -> str:
        return f"FactoredLFunction({self})"

    def to_latex(self) -> str:
        return latex_lsymbols(self)


# ---------------------------------------------------------------------------
# identity testing


_PREFILTER_SEED = 0x5EED


def random_rational(rng: random.Random, bound: int = 1000) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def random_point(variables: Iterable[str], rng: random.Random, bound: int = 1000) -> dict[str, Fraction]:
    return {v: random_rational(rng, bound) for v in sorted(variables, key=var_key)}


def _cross_difference(f: FactoredLFunction, g: FactoredLFunction) -> LaurentPoly:
    num, den = (f / g).numerator_denominator()
    return num - den


def rf_equal(f: FactoredLFunction, g: FactoredLFunction) -> bool:
    """Exact equality of ``f`` and ``g`` as rational functions."""
    if f == g:
        return True
    h = f / g
    if not h.factors:
        return h.unit == ONE_MONO
    # cheap refutation before the exact expansion; a mismatch here is conclusive
    rng = random.Random(_PREFILTER_SEED)
    try:
        if h.evaluate(random_point(h.variables, rng)) != 1:
            return False
    except (PoleAtPoint, ZeroDivisionError):
        pass
    num, den = h.numerator_denominator()
    return num == den


def rf_witness(f: FactoredLFunction, g: FactoredLFunction) -> LaurentMonomial | None:
    """Leading term of the cross-multiplied difference, or ``None`` when equal."""
    if rf_equal(f, g):
        return None
    return _cross_difference(f, g).leading_term()


def eval_at(f: FactoredLFunction, assignment: Mapping[str, Rational]) -> Fraction:
    missing = f.variables - set(assignment)
    if missing:
        raise KeyError(f"assignment misses {sorted(missing)}")
    return f.evaluate(assignment)


def sz_equal(f: FactoredLFunction, g: FactoredLFunction, rng: random.Random,
             points: int = 3, attempts: int = 16) -> bool:
    """Schwartz-Zippel check of ``f == g`` at ``points`` random rational points."""
    variables = f.variables | g.variables
    for _ in range(points):
        for _ in range(attempts):
            pt = random_point(variables, rng)
            try:
                a, b = f.evaluate(pt), g.evaluate(pt)
            except (PoleAtPoint, ZeroDivisionError):
                continue
            break
        else:
            raise PoleAtPoint(f"no pole-free point after {attempts} attempts")
        if a != b:
            return False
    return True


# ---------------------------------------------------------------------------
# truncated power series


@dataclass(frozen=True)
class TruncatedSeries:
    grading: str
    degree: int
    coeffs: tuple  # tuple[LaurentPoly, ...], length degree + 1

    def __post_init__(self):
        if len(self.coeffs) != self.degree + 1:
            raise ValueError("coefficient count must be degree + 1")
        for c in self.coeffs:
            if self.grading in c.variables:
                raise ValueError(f"coefficient depends on grading variable {self.grading}")

    @classmethod
    def from_poly(cls, poly: LaurentPoly, grading: str, degree: int) -> "TruncatedSeries":
        pieces = poly.split_by(grading)
        if pieces and min(pieces) < 0:
            raise SeriesError(f"negative power of {grading} in {poly}")
        return cls(grading, degree,
                   tuple(pieces.get(d, LaurentPoly.zero()) for d in range(degree + 1)))

    @classmethod
    def from_terms(cls, terms: Iterable[LaurentPoly], grading: str, degree: int) -> "TruncatedSeries":
        """Sum of polynomials that may themselves carry powers of ``grading``."""
        total = TruncatedSeries.zero(grading, degree)
        for t in terms:
            total = total + TruncatedSeries.from_poly(t, grading, degree)
        return total

    @classmethod
    def zero(cls, grading: str, degree: int) -> "TruncatedSeries":
        return cls(grading, degree, tuple(LaurentPoly.zero() for _ in range(degree + 1)))

    @classmethod
    def one(cls, grading: str, degree: int) -> "TruncatedSeries":
        return cls(grading, degree,
                   (LaurentPoly.const(1),) + tuple(LaurentPoly.zero() for _ in range(degree)))

    def _check(self, other: "TruncatedSeries"):
        if other.grading != self.grading or other.degree != self.degree:
            raise ValueError("series with different grading or truncation")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(self.grading, self.degree,
                               tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, LaurentMonomial, int, Fraction)):
            other = LaurentPoly.coerce(other)
            return TruncatedSeries(self.grading, self.degree, tuple(c * other for c in self.coeffs))
        self._check(other)
        D = self.degree
        out = [LaurentPoly.zero() for _ in range(D + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(D + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(self.grading, D, tuple(out))

    def substitute(self, mapping) -> "TruncatedSeries":
        return TruncatedSeries(self.grading, self.degree, tuple(c.substitute(mapping) for c in self.coeffs))

    def to_poly(self) -> LaurentPoly:
        g = LaurentPoly.from_monomial(LaurentMonomial.var(self.grading))
        out = LaurentPoly.zero()
        for d, c in enumerate(self.coeffs):
            out = out + c * g ** d
        return out

    def __str__(self) -> str:
        return f"{self.to_poly()} + O({self.grading}^{self.degree + 1})"


def _binomial_series(m: LaurentMonomial, e: int, grading: str, D: int) -> TruncatedSeries:
    d = m.degree(grading)
    rest = m.without(grading)
    coeffs = [LaurentPoly.zero() for _ in range(D + 1)]
    if e > 0:
        if d < 0:
            raise SeriesError(f"factor (1 - {m})^{e} has negative {grading}-degree")
        for i in range(e + 1):
            c = LaurentPoly.from_monomial(comb(e, i) * (-rest) ** i)
            if d == 0:
                coeffs[0] = coeffs[0] + c
            elif i * d <= D:
                coeffs[i * d] = coeffs[i * d] + c
        return TruncatedSeries(grading, D, tuple(coeffs))
    if d <= 0:
        raise SeriesError(f"denominator factor (1 - {m})^{e} is not a power series in {grading}")
    r = -e
    for i in range(D // d + 1):
        coeffs[i * d] = LaurentPoly.from_monomial(comb(i + r - 1, i) * rest ** i)
    return TruncatedSeries(grading, D, tuple(coeffs))


def series_expand(f: FactoredLFunction, grading: str, D: int) -> TruncatedSeries:
    """Expand ``f`` as a power series in ``grading`` up to degree ``D``."""
    if D < 0:
        raise ValueError("truncation degree must be non-negative")
    ud = f.unit.degree(grading)
    if ud < 0:
        raise SeriesError(f"unit {f.unit} has negative {grading}-degree")
    out = TruncatedSeries.one(grading, D)
    for m, e in f.sorted_factors():
        out = out * _binomial_series(m, e, grading, D)
    shifted = [LaurentPoly.zero() for _ in range(D + 1)]
    u = LaurentPoly.from_monomial(f.unit.without(grading))
    for i in range(D + 1 - ud):
        shifted[i + ud] = out.coeffs[i] * u
    return TruncatedSeries(grading, D, tuple(shifted))


# ---------------------------------------------------------------------------
# LaTeX


def _latex_arg(mu: int, two_nu: int) -> str:
    parts = []
    if mu:
        parts.append("s" if mu == 1 else "-s" if mu == -1 else f"{mu}s")
    if two_nu or not parts:
        nu = Fraction(two_nu, 2)
        if nu.denominator == 1:
            txt = str(abs(nu.numerator))
        else:
            txt = rf"\tfrac{{{abs(nu.numerator)}}}{{{nu.denominator}}}"
        if parts:
            parts.append(("-" if nu < 0 else "+") + txt)
        else:
            parts.append(("-" if nu < 0 else "") + txt)
    return "".join(parts)


def _latex_rational(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    sign = "-" if c < 0 else ""
    return sign + rf"\tfrac{{{abs(c.numerator)}}}{{{c.denominator}}}"


def _latex_mono(m: LaurentMonomial) -> str:
    if not m.exps:
        return _latex_rational(m.coeff)
    body = " ".join(
        (v if len(v) == 1 else rf"{v[0]}_{{{v[1:]}}}" if v[1:].isdigit() else rf"\mathrm{{{v}}}")
        + ("" if e == 1 else f"^{{{e}}}")
        for v, e in m.exps
    )
    if m.coeff == 1:
        return body
    if m.coeff == -1:
        return "-" + body
    return _latex_rational(m.coeff) + " " + body


def latex_lsymbols(f: FactoredLFunction) -> str:
    """Group factors by argument (the ``X``/``T`` part) into L-symbols.

    ``L(mu s + nu; a_1, ..., a_r)`` denotes ``prod_i (1 - a_i q^{-(mu s + nu)})^{-1}``.
    """
    groups: dict[tuple[int, int, int], list[str]] = {}
    for m, e in f.sorted_factors():
        key = (m.degree(X), m.degree(T))
        param = _latex_mono(m.without(X, T))
        sign = 1 if e < 0 else -1
        for _ in range(abs(e)):
            groups.setdefault((sign,) + key, []).append(param)

    sep = r",\,"

    def render(sign: int) -> str:
        syms = [
            "L(" + _latex_arg(mu, tn) + r";\," + sep.join(ps) + ")"
            for (s, mu, tn), ps in sorted(groups.items())
            if s == sign
        ]
        return r"\,".join(syms)

    num, den = render(1), render(-1)
    unit = "" if f.unit == ONE_MONO else _latex_mono(f.unit) + r"\,"
    if not den:
        return unit + (num or "1")
    return unit + rf"\frac{{{num or '1'}}}{{{den}}}"


# ---------------------------------------------------------------------------
# parsing


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            mt = _TOKEN.match(text, pos)
            if not mt:
                raise ParseError("unexpected character", text, pos + len(text[pos:]) - len(text[pos:].lstrip()))
            kind = mt.lastgroup
            self.toks.append((kind, mt.group(kind), mt.start(kind)))
            pos = mt.end()
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.peek()[2])

    def expect(self, val: str):
        tok = self.peek()
        if tok[1] != val:
            self.error(f"expected {val!r}")
        self.i += 1

    def expect_end(self):
        if self.peek()[0] != "end":
            self.error("unexpected trailing input")

    def integer(self) -> int:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        tok = self.peek()
        if tok[0] != "num" or "/" in tok[1]:
            self.error("expected integer exponent")
        self.i += 1
        return sign * int(tok[1])

    def atom(self) -> LaurentMonomial:
        kind, val, _ = self.peek()
        if kind == "num":
            self.i += 1
            base = LaurentMonomial.const(Fraction(val))
        elif kind == "id":
            self.i += 1
            base = LaurentMonomial.var(val)
        else:
            self.error("expected number or variable")
        if self.peek()[1] == "^":
            self.i += 1
            base = base ** self.integer()
        return base

    def monomial(self) -> LaurentMonomial:
        sign = 1
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.i += 1
            sign = -1
        m = self.atom()
        while self.peek()[1] == "*" and self.peek(1)[1] != "(":
            self.i += 1
            m = m * self.atom()
        return m * sign

    def polynomial(self) -> LaurentPoly:
        terms = [self.monomial()]
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
            terms.append(self.monomial() * sign)
        return LaurentPoly.from_monomials(terms)

    def factored(self) -> FactoredLFunction:
        unit = ONE_MONO
        pairs = []
        while True:
            if self.peek()[1] == "(":
                self.i += 1
                one = self.atom()
                if one != ONE_MONO:
                    self.error("Euler factor must start with 1")
                op = self.take()
                if op[1] not in "+-" or op[0] != "op":
                    self.i -= 1
                    self.error("expected '+' or '-'")
                m = self.monomial()
                self.expect(")")
                e = 1
                if self.peek()[1] == "^":
                    self.i += 1
                    e = self.integer()
                pairs.append((m if op[1] == "-" else -m, e))
            else:
                unit = unit * self.monomial()
            if self.peek()[1] == "*":
                self.i += 1
                continue
            break
        return FactoredLFunction.from_factors(pairs, unit=unit)
