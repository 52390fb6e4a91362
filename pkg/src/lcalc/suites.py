"""Identity suites run by ``lcalc verify``.

Each :class:`Case` is an independent check.  In ``symbolic`` mode equalities are
decided exactly; in ``numeric`` mode they are spot-checked at seeded random
rational points (Schwartz-Zippel).  The per-case RNG is derived from the seed and
the case's own identity, so results do not depend on execution order.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from . import doubling as dbl
from . import kcorbits as orb
from . import satake as sat
from . import symmfunc as sym
from .exactalg import (
    FactoredLFunction,
    LaurentMonomial,
    LaurentPoly,
    PoleAtPoint,
    T,
    X,
    ZeroAtPoint,
    random_point,
    random_rational,
    rf_equal,
    rf_witness,
    series_expand,
    sz_equal,
)
from .satake import ArgForm, GroupData, SatakeSet

SCHEMA_VERSION = 1
SUITES = ("algebra", "satake", "symmfunc", "orbits", "doubling")
SYMBOLIC, NUMERIC = "symbolic", "numeric"
SZ_POINTS = 3
RESAMPLE_ATTEMPTS = 16

S = SatakeSet.symbols


@dataclass
class Case:
    identity: str
    parameters: dict
    check: Callable[[str, random.Random], str | None]  # None on success, else a witness

    @property
    def digest(self) -> str:
        blob = json.dumps(self.parameters, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:12]

    def rng(self, seed: int) -> random.Random:
        return random.Random(f"{seed}:{self.identity}:{self.digest}")


@dataclass
class CaseResult:
    identity: str
    digest: str
    parameters: dict
    status: str
    elapsed_ms: float
    witness: str | None = None

    def to_json(self, timings: bool = False) -> dict:
        out = {
            "identity": self.identity,
            "parameters": self.parameters,
            "digest": self.digest,
            "status": self.status,
            "witness": self.witness,
        }
        if timings:
            out["elapsed_ms"] = round(self.elapsed_ms, 3)
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    mode: str
    settings: dict
    cases: list = field(default_factory=list)

    @property
    def totals(self) -> dict:
        passed = sum(1 for c in self.cases if c.status == "pass")
        return {"cases": len(self.cases), "pass": passed, "fail": len(self.cases) - passed}

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.cases)

    def to_json(self, timings: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "suite": self.suite,
            "seed": self.seed,
            "mode": self.mode,
            "settings": self.settings,
            "cases": [c.to_json(timings) for c in self.cases],
            "totals": self.totals,
        }


def run_cases(cases: Iterable[Case], mode: str, seed: int) -> list[CaseResult]:
    results = []
    for case in cases:
        start = time.perf_counter()
        try:
            witness = case.check(mode, case.rng(seed))
        except (ArithmeticError, ValueError) as exc:
            witness = f"error: {type(exc).__name__}: {exc}"
        elapsed = (time.perf_counter() - start) * 1000
        results.append(CaseResult(case.identity, case.digest, case.parameters,
                                  "pass" if witness is None else "fail", elapsed, witness))
    results.sort(key=lambda r: (r.identity, r.digest))
    return results


# ---------------------------------------------------------------------------
# case builders


def equality_case(identity: str, parameters: dict,
                  sides: Callable[[], tuple[FactoredLFunction, FactoredLFunction]]) -> Case:
    def check(mode: str, rng: random.Random) -> str | None:
        lhs, rhs = sides()
        if mode == NUMERIC:
            return None if sz_equal(lhs, rhs, rng, SZ_POINTS, RESAMPLE_ATTEMPTS) else "values differ at a random point"
        w = rf_witness(lhs, rhs)
        return None if w is None else f"leading term of difference: {w}"

    return Case(identity, parameters, check)


def structural_case(identity: str, parameters: dict, sides: Callable[[], tuple]) -> Case:
    def check(mode: str, rng: random.Random) -> str | None:
        a, b = sides()
        return None if a == b else f"{a} != {b}"

    return Case(identity, parameters, check)


def predicate_case(identity: str, parameters: dict, predicate: Callable[[], bool]) -> Case:
    return Case(identity, parameters, lambda mode, rng: None if predicate() else "predicate false")


def series_witness(lhs, rhs) -> str | None:
    for d, (a, b) in enumerate(zip(lhs.coeffs, rhs.coeffs)):
        if a != b:
            return f"degree {d} in {lhs.grading}: leading term of difference {(a - b).leading_term()}"
    return None


def _pole_free_point(variables, rng: random.Random, valid: Callable[[dict], object]) -> dict:
    for _ in range(RESAMPLE_ATTEMPTS):
        pt = random_point(variables, rng)
        try:
            valid(pt)
        except (PoleAtPoint, ZeroAtPoint, ZeroDivisionError):
            continue
        return pt
    raise PoleAtPoint(f"no pole-free point after {RESAMPLE_ATTEMPTS} attempts")


def psi_series_case(k: int, D: int) -> Case:
    tau, tau_p = S("x", k), S("y", k)

    def check(mode: str, rng: random.Random) -> str | None:
        if mode == SYMBOLIC:
            return series_witness(*dbl.psi_series_sides(k, "p", tau, tau_p, D))
        variables = {T, X} | {v for e in tau + tau_p for v in e.variables}
        closed = dbl.psi_closed(k, "p", tau, tau_p)
        for _ in range(SZ_POINTS):
            pt = _pole_free_point(variables, rng, lambda pt: closed.substitute(pt))
            w = series_witness(*dbl.psi_series_sides(k, "p", tau, tau_p, D, point=pt))
            if w:
                return w
        return None

    return Case("doubling.psi_series", {"k": k, "D": D}, check)


# ---------------------------------------------------------------------------
# algebra


def _random_poly(rng: random.Random, variables=("a", "b", T, X), terms: int = 4) -> LaurentPoly:
    monos = []
    for _ in range(terms):
        exps = {v: rng.randint(-2, 2) for v in variables}
        monos.append(LaurentMonomial.make(random_rational(rng, 9), **exps))
    return LaurentPoly.from_monomials(monos)


def _random_factored(rng: random.Random, grading: str = X, positive: bool = True) -> FactoredLFunction:
    pairs = []
    for _ in range(rng.randint(1, 4)):
        exps = {"a": rng.randint(-2, 2), "b": rng.randint(-1, 2), T: rng.randint(0, 2)}
        exps[grading] = rng.randint(1, 3) if positive else rng.randint(-2, 3)
        pairs.append((LaurentMonomial.make(random_rational(rng, 9), **exps), rng.choice([-2, -1, 1, 2])))
    return FactoredLFunction.from_factors(pairs)


def algebra_cases(D: int, trials: int = 4) -> list[Case]:
    cases = []
    for t in range(trials):
        def ring_laws(mode, rng):
            a, b, c = (_random_poly(rng) for _ in range(3))
            ok = (a + b) + c == a + (b + c) and a * b == b * a and (a * b) * c == a * (b * c) \
                and a * (b + c) == a * b + a * c and a - a == 0
            return None if ok else f"ring law fails for {a}; {b}; {c}"

        def rf_laws(mode, rng):
            f, g = _random_factored(rng), _random_factored(rng)
            ok = rf_equal(f * g, g * f) and rf_equal(f * f.inverse(), FactoredLFunction.one())
            return None if ok else f"rf laws fail for {f}; {g}"

        def series_mult(mode, rng):
            f, g = _random_factored(rng), _random_factored(rng)
            lhs = series_expand(f * g, X, D)
            rhs = series_expand(f, X, D) * series_expand(g, X, D)
            return series_witness(lhs, rhs)

        def eval_hom(mode, rng):
            f, g = _random_factored(rng), _random_factored(rng)
            pt = _pole_free_point((f * g).variables | f.variables | g.variables, rng,
                                  lambda pt: (f.evaluate(pt), g.evaluate(pt)))
            return None if (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt) else f"at {pt}"

        def round_trip(mode, rng):
            p = _random_poly(rng)
            f = _random_factored(rng, positive=False)
            okp = LaurentPoly.parse(str(p)) == p
            okf = FactoredLFunction.parse(str(f)) == f and rf_equal(FactoredLFunction.parse(str(f)), f)
            return None if okp and okf else f"round trip fails for {p} / {f}"

        for name, fn in [("ring_laws", ring_laws), ("rf_laws", rf_laws), ("series_multiplicative", series_mult),
                         ("eval_homomorphism", eval_hom), ("serialization_round_trip", round_trip)]:
            cases.append(Case(f"algebra.{name}", {"trial": t, "D": D}, fn))

    ex = FactoredLFunction.parse
    cases.append(equality_case("algebra.rf_equal_geometric", {},
                               lambda: (ex("(1 - X^2) * (1 - X)^-1"), ex("(1 + X)"))))
    cases.append(predicate_case("algebra.rf_distinct_factors", {},
                                lambda: not rf_equal(ex("(1 - x*X)^-1"), ex("(1 - x^2*X)^-1"))))
    return cases


# ---------------------------------------------------------------------------
# satake


def satake_cases(max_n: int, max_k: int) -> list[Case]:
    cases = []
    for k in range(1, max(6, max_k) + 1):
        tau = S("x", k)
        arg = ArgForm(1, 0)
        cases.append(equality_case(
            "satake.sym2_wedge2_factorization", {"k": k},
            lambda tau=tau, arg=arg: (sat.l_sym2(tau, arg) * sat.l_wedge2(tau, arg),
                                      sat.l_rankin_selberg(tau, tau, arg))))
    for kind in ("Sp", "SO"):
        for n in range(1, max_n + 1):
            g = GroupData(kind, n)
            pi = S("b", n)
            cases.append(structural_case(
                "satake.lift_inversion_invariant", {"group": kind, "n": n},
                lambda g=g, pi=pi: (sat.lift_to_gl(g, pi).multiset(),
                                    sat.lift_to_gl(g, pi).inverse().multiset())))
            for k in range(1, max_k + 1):
                tau = S("x", k)
                cases.append(equality_case(
                    "satake.siegel_factorization", {"group": kind, "n": n, "k": k},
                    lambda g=g, pi=pi, tau=tau: sat.siegel_sides(g, pi, tau, ArgForm(1, 1))))
    for k in range(1, max_k + 1):
        a, b = S("x", k), S("y", max(1, k - 1))
        cases.append(structural_case(
            "satake.rankin_selberg_symmetry", {"k": k},
            lambda a=a, b=b: (sat.l_rankin_selberg(a, b, ArgForm(2, 1)),
                              sat.l_rankin_selberg(b, a, ArgForm(2, 1)))))
        cases.append(predicate_case(
            "satake.rankin_selberg_exponent", {"k": k},
            lambda a=a, b=b: sat.l_rankin_selberg(a, b, ArgForm(2, 1)).total_exponent() == -len(a) * len(b)))
        tau = S("x", k)

        def reflection(tau=tau, k=k):
            g = sat.gamma_unramified("p", tau, k)
            flip = {X: LaurentMonomial.var(X, -1), "p": LaurentMonomial.var("p", -1)}
            flip.update({str(e): e.inverse() for e in tau})
            return g.substitute(flip), g.inverse()

        cases.append(equality_case("satake.gamma_reflection", {"k": k}, reflection))
    cases.append(predicate_case("satake.unitary_regularity", {"values": ["3/2", "1", "2/3"], "q": 4},
                                lambda: sat.unitary_regularity_check([Fraction(3, 2), 1, Fraction(2, 3)], 4)))
    cases.append(predicate_case("satake.unitary_regularity", {"values": ["9", "1"], "q": 3},
                                lambda: not sat.unitary_regularity_check([9, 1], 3)))
    return cases


# ---------------------------------------------------------------------------
# symmfunc


def symmfunc_cases(max_k: int, D: int) -> list[Case]:
    cases = []
    scales = [LaurentMonomial.make(1, p=1, X=1), LaurentMonomial.make(1, p=1, T=1, X=2)]
    for size in range(1, min(3, max_k) + 1):
        params = S("x", size)
        for scale in scales:
            cases.append(Case(
                "symmfunc.rs_series", {"size": size, "scale": str(scale), "D": D},
                lambda mode, rng, params=params, scale=scale: series_witness(
                    *sym.rs_series_sides(params, scale, "p", D))))
    for k in range(1, min(3, max_k) + 1):
        cd = min(8, D)
        cases.append(Case(
            "symmfunc.cauchy", {"k": k, "D": cd},
            lambda mode, rng, k=k, cd=cd: series_witness(*sym.cauchy_sides(S("x", k), S("y", k), cd))))
    for k in range(1, min(4, max_k) + 1):
        tau = S("x", k)
        for size in range(0, 4):
            for lam in sym.partitions_of(size, k):
                lam = lam + (0,) * (k - len(lam))
                cases.append(structural_case(
                    "symmfunc.whittaker_twist", {"k": k, "lambda": list(lam)},
                    lambda tau=tau, lam=lam: (
                        sym.shintani_whittaker(tau, tuple(l + 1 for l in lam)),
                        sym.shintani_whittaker(tau, lam) * LaurentPoly.from_monomial(tau.product()))))
    for k in range(1, 5):
        ones = SatakeSet.values([1] * k)
        for size in range(0, 7):
            for lam in sym.partitions_of(size, k):
                cases.append(structural_case(
                    "symmfunc.schur_specialization", {"k": k, "lambda": list(lam)},
                    lambda ones=ones, lam=lam, k=k: (sym.schur(lam, ones),
                                                     LaurentPoly.const(sym.count_ssyt(lam, k)))))
    return cases


# ---------------------------------------------------------------------------
# orbits


def orbit_cases(max_kc: int = 10, max_top_k: int = 5, max_top_c: int = 4) -> list[Case]:
    cases = []
    for k in range(1, max_kc + 1):
        for c in range(1, max_kc // k + 1):
            def vanishing(mode, rng, k=k, c=c):
                for lam in orb.compositions_of(k * c):
                    if max(lam) > k and orb.semi_whittaker_dim_bound(k, c, lam) != 0:
                        return f"nonzero bound at {lam}"
                return None

            cases.append(Case("orbits.vanishing_above_rectangle", {"k": k, "c": c}, vanishing))

            def consistency(mode, rng, k=k, c=c):
                top = orb.Partition.rectangle(k, c)
                for lam in orb.compositions_of(k * c):
                    below = orb.dominance_compare(lam, top) in (orb.Dominance.LESS, orb.Dominance.EQUAL)
                    if orb.greater_or_noncomparable(lam, top) == below:
                        return f"predicates disagree at {lam}"
                return None

            cases.append(Case("orbits.predicate_consistency", {"k": k, "c": c}, consistency))
    for k in range(1, max_top_k + 1):
        for c in range(1, max_top_c + 1):
            cases.append(predicate_case(
                "orbits.top_multiplicity_one", {"k": k, "c": c},
                lambda k=k, c=c: orb.semi_whittaker_dim_bound(k, c, (k,) * c) == 1))

    def partial_order(mode, rng):
        for size in range(1, 9):
            parts = list(sym.partitions_of(size))
            for _ in range(20):
                a, b, c = (rng.choice(parts) for _ in range(3))
                ab, bc, ac = orb.dominance_compare(a, b), orb.dominance_compare(b, c), orb.dominance_compare(a, c)
                if orb.dominance_compare(a, a) != orb.Dominance.EQUAL:
                    return f"not reflexive at {a}"
                if ab == orb.Dominance.EQUAL and a != b:
                    return f"not antisymmetric at {a}, {b}"
                ge = (orb.Dominance.GREATER, orb.Dominance.EQUAL)
                if ab in ge and bc in ge and ac not in ge:
                    return f"not transitive at {a}, {b}, {c}"
        return None

    cases.append(Case("orbits.dominance_partial_order", {"sizes": 8}, partial_order))
    for kind in ("Sp", "SO"):
        for k in range(1, 4):
            for c in (2, 4):
                cases.append(predicate_case(
                    "orbits.doubling_orbit_valid", {"group": kind, "k": k, "c": c},
                    lambda kind=kind, k=k, c=c: orb.valid_nilpotent_orbit(kind, orb.doubling_orbit(kind, k, c))))
    return cases


# ---------------------------------------------------------------------------
# doubling


def doubling_cases(max_n: int, max_k: int, D: int, numeric: bool = False) -> list[Case]:
    cases = []
    for kind in ("Sp", "SO"):
        for n in range(1, max(max_n, 1) + 1):
            for k in range(1, max_k + 1):
                params = {"group": kind, "n": n, "k": k}
                tau = S("x", k)
                cases.append(equality_case(
                    "doubling.gk_telescoping", params,
                    lambda kind=kind, n=n, k=k, tau=tau: (dbl.d_tau_gk(kind, n, k, tau),
                                                          dbl.d_tau_closed(kind, n, k, tau))))
                cases.append(equality_case(
                    "doubling.classical_reduction", params,
                    lambda kind=kind, n=n, k=k, tau=tau: dbl.classical_reduction_sides(
                        kind, n, k, S("b", n), tau)))
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            tau = S("x", k)
            cases.append(equality_case(
                "doubling.standard_telescoping", {"n": n, "k": k},
                lambda n=n, k=k, tau=tau: (dbl.gk_standard_raw(n, tau, 2 * k * n + 1),
                                           dbl.gk_standard_closed(n, tau, 2 * k * n + 1))))
    for n in range(2, max(max_n, 2) + 1):
        for k in range(1, max_k + 1):
            for a in range(1, n):
                cases.append(equality_case(
                    "doubling.gl_reduction", {"n": n, "a": a, "b": n - a, "k": k},
                    lambda n=n, a=a, k=k: dbl.gl_reduction_sides(
                        n, a, n - a, k, S("a", a), S("c", n - a), S("x", k), S("y", k))))
    for n in (3, 4):
        for a in range(1, n - 1):
            for b in range(1, n - a):
                c = n - a - b
                for k in range(1, min(max_k, 3) + 1):
                    cases.append(equality_case(
                        "doubling.gl_associativity", {"a": a, "b": b, "c": c, "k": k},
                        lambda a=a, b=b, c=c, k=k: dbl.gl_associativity_sides(
                            k, S("a", a), S("b", b), S("c", c), S("x", k), S("y", k))))
    for k in range(1, max_k + 1):
        cases.append(equality_case(
            "doubling.prop_gl1", {"k": k},
            lambda k=k: dbl.prop_gl1_sides(k, "p", S("x", k), S("y", k))))
    for k in range(1, min(max_k, 3) + 1):
        cases.append(psi_series_case(k, D))
    return cases


def build_cases(suite: str, *, max_n: int, max_k: int, trunc: int) -> list[Case]:
    if suite == "algebra":
        return algebra_cases(trunc)
    if suite == "satake":
        return satake_cases(max_n, max_k)
    if suite == "symmfunc":
        return symmfunc_cases(max_k, trunc)
    if suite == "orbits":
        return orbit_cases()
    if suite == "doubling":
        return doubling_cases(max_n, max_k, trunc)
    raise ValueError(f"unknown suite {suite!r}")


def case_mode(case: Case, mode: str) -> str:
    # symbolic runs still check psi_series at k=3 on random points
    if case.identity == "doubling.psi_series" and case.parameters["k"] >= 3:
        return NUMERIC
    return mode


def run_suite(suite: str, *, seed: int, max_n: int, max_k: int, trunc: int, numeric: bool = False,
              extra: Iterable[Case] = ()) -> SuiteReport:
    names = SUITES if suite == "all" else (suite,)
    mode = NUMERIC if numeric else SYMBOLIC
    cases = [c for name in names for c in build_cases(name, max_n=max_n, max_k=max_k, trunc=trunc)]
    cases.extend(extra)
    report = SuiteReport(suite, seed, mode, {"max_n": max_n, "max_k": max_k, "trunc": trunc})
    results = []
    for case in cases:
        results.extend(run_cases([case], case_mode(case, mode), seed))
    results.sort(key=lambda r: (r.identity, r.digest))
    report.cases = results
    return report
