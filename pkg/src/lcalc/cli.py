"""``lcalc`` command-line front end.

Exit codes: 0 success, 1 an identity failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import doubling as dbl
from . import kcorbits as orb
from . import satake as sat
from . import suites
from .exactalg import FactoredLFunction, ParseError, rf_equal
from .satake import ArgForm, GroupData, SatakeSet

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
SEED_ENV = "LCALC_SEED"
SYMBOLIC_BOUNDS = (3, 3)
NUMERIC_BOUNDS = (5, 4)


class UsageError(Exception):
    pass


def _satake(text: str | None, prefix: str, size: int, flag: str) -> SatakeSet:
    if text is None:
        return SatakeSet.symbols(prefix, size)
    try:
        params = SatakeSet.parse(text)
    except ParseError as exc:
        raise UsageError(_caret(flag, exc)) from None
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"{flag}: {exc}") from None
    if len(params) != size:
        raise UsageError(f"{flag}: expected {size} parameters, got {len(params)}")
    return params


def _caret(flag: str, exc: ParseError) -> str:
    return f"{flag}: {exc}\n  {exc.text}\n  {' ' * exc.pos}^"


def _resolve_seed(seed: int | None) -> int:
    if seed is None:
        env = os.environ.get(SEED_ENV)
        if env is None:
            return 0
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    if not -(2 ** 63) <= seed < 2 ** 64:
        raise UsageError("seed must fit in 64 bits")
    return seed


def _render(f: FactoredLFunction, fmt: str, extra: dict | None = None) -> str:
    if fmt == "latex":
        return f.to_latex()
    if fmt == "json":
        num, den = f.numerator_denominator()
        obj = dict(extra or {})
        obj.update({"value": str(f), "numerator": str(num), "denominator": str(den)})
        return json.dumps(obj, sort_keys=True)
    return str(f)


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _group_kind(args) -> GroupData:
    if args.group is None or args.n is None:
        raise UsageError("--group and --n are required")
    try:
        return GroupData(args.group, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _positive(value: int | None, flag: str) -> int:
    if value is None:
        raise UsageError(f"{flag} is required")
    if value < 1:
        raise UsageError(f"{flag} must be positive")
    return value


# ---------------------------------------------------------------------------
# commands


def cmd_lfactor(args) -> int:
    if args.arg is None:
        raise UsageError("--arg MU,TWO_NU is required")
    try:
        arg = ArgForm.parse(args.arg)
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise UsageError(f"--arg: {exc}") from None
    if args.tau is None:
        raise UsageError("--tau is required")
    tau = _parse_free(args.tau, "--tau")
    if args.kind == "rs":
        if args.tauprime is None:
            raise UsageError("--kind rs needs --tauprime")
        value = sat.l_rankin_selberg(tau, _parse_free(args.tauprime, "--tauprime"), arg)
    elif args.kind == "std":
        value = sat.l_standard(tau, arg)
    elif args.kind == "sym2":
        value = sat.l_sym2(tau, arg)
    else:
        value = sat.l_wedge2(tau, arg)
    _emit(_render(value, args.format, {"kind": args.kind, "arg": arg.to_json()}), args.output)
    return EXIT_OK


def _parse_free(text: str, flag: str) -> SatakeSet:
    try:
        return SatakeSet.parse(text)
    except ParseError as exc:
        raise UsageError(_caret(flag, exc)) from None
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(f"{flag}: {exc}") from None


def cmd_zeta(args) -> int:
    g = _group_kind(args)
    n, k = g.n, _positive(args.k, "--k")
    pi = _satake(args.pi, "a", n, "--pi")
    tau = _satake(args.tau, "x", k, "--tau")
    lines = []
    status = EXIT_OK
    try:
        if g.kind == "GL":
            tau_p = _satake(args.tauprime, "y", k, "--tauprime")
            form = dbl.z_gl_closed(n, k, pi, tau, tau_p)
        else:
            if args.tauprime is not None:
                raise UsageError("--tauprime applies only to --group gl")
            form = dbl.z_classical_closed(g, n, k, pi, tau)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines.append(_render(form.value, args.format, {"group": g.kind, "n": n, "k": k, "alpha": form.alpha}))
    if args.check == "reduction":
        ok = _zeta_reduction(g, k, pi, tau, tau_p if g.kind == "GL" else None)
        if args.format == "json":
            obj = json.loads(lines[0])
            obj["reduction"] = "PASS" if ok else "FAIL"
            lines = [json.dumps(obj, sort_keys=True)]
        else:
            lines.append(f"reduction: {'PASS' if ok else 'FAIL'}")
        status = EXIT_OK if ok else EXIT_FAIL
    _emit("\n".join(lines), args.output)
    return status


def _zeta_reduction(g: GroupData, k: int, pi: SatakeSet, tau: SatakeSet, tau_p: SatakeSet | None) -> bool:
    if g.kind != "GL":
        return dbl.verify_classical_reduction(g, g.n, k, pi, tau)
    n = g.n
    if n == 1:
        (p,) = pi.entries
        return dbl.verify_prop_gl1(k, p, tau, tau_p)
    parts = pi.entries
    return all(
        dbl.verify_gl_reduction(n, a, n - a, k, SatakeSet(parts[:a]), SatakeSet(parts[a:]), tau, tau_p)
        for a in range(1, n)
    )


def cmd_dtau(args) -> int:
    g = _group_kind(args)
    if not g.is_classical:
        raise UsageError("dtau needs --group sp or so")
    k = _positive(args.k, "--k")
    tau = _satake(args.tau, "x", k, "--tau")
    closed = dbl.d_tau_closed(g, g.n, k, tau)
    lines = [_render(closed, args.format, {"group": g.kind, "n": g.n, "k": k, "alpha": g.alpha(k)})]
    status = EXIT_OK
    if args.check == "telescoping":
        ok = rf_equal(dbl.d_tau_gk(g, g.n, k, tau), closed)
        lines.append(f"telescoping: {'PASS' if ok else 'FAIL'}")
        status = EXIT_OK if ok else EXIT_FAIL
    _emit("\n".join(lines), args.output)
    return status


def _parts(text: str, flag: str) -> tuple:
    try:
        return orb.Composition.parse(text).parts
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def cmd_orbit(args) -> int:
    if args.orbit_cmd == "dominance":
        out = str(orb.dominance_compare(_parts(args.lam, "lambda"), _parts(args.mu, "mu")))
    elif args.orbit_cmd == "dim-bound":
        k, c = _positive(args.k, "--k"), _positive(args.c, "--c")
        try:
            out = str(orb.semi_whittaker_dim_bound(k, c, _parts(args.lam, "--lambda")))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    elif args.orbit_cmd == "doubling-orbit":
        k, c = _positive(args.k, "--k"), _positive(args.c, "--c")
        try:
            out = str(orb.doubling_orbit(args.group, k, c))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    else:
        try:
            out = "valid" if orb.valid_nilpotent_orbit(args.group, _parts(args.lam, "--lambda")) else "invalid"
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.format == "json":
        out = json.dumps({"command": args.orbit_cmd, "result": out})
    _emit(out, args.output)
    return EXIT_OK


def cmd_verify(args, extra_cases=()) -> int:
    if args.trunc < 1:
        raise UsageError("--trunc must be at least 1")
    seed = _resolve_seed(args.seed)
    dn, dk = NUMERIC_BOUNDS if args.numeric else SYMBOLIC_BOUNDS
    max_n = dn if args.max_n is None else _positive(args.max_n, "--max-n")
    max_k = dk if args.max_k is None else _positive(args.max_k, "--max-k")
    report = suites.run_suite(args.suite, seed=seed, max_n=max_n, max_k=max_k, trunc=args.trunc,
                              numeric=args.numeric, extra=extra_cases)
    if args.format == "json":
        text = json.dumps(report.to_json(timings=args.timings), indent=2, sort_keys=True)
    else:
        lines = []
        for c in report.cases:
            params = json.dumps(c.parameters, sort_keys=True, separators=(",", ":"))
            line = f"{c.status.upper()} {c.identity} {params}"
            if args.timings:
                line += f" {c.elapsed_ms:.1f}ms"
            if c.witness:
                line += f"\n    witness: {c.witness}"
            lines.append(line)
        t = report.totals
        lines.append(f"{args.suite} ({report.mode}, seed {seed}): {t['pass']}/{t['cases']} passed")
        text = "\n".join(lines)
    _emit(text, args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--output", help="write to this file instead of stdout")

    params = _Parser(add_help=False)
    params.add_argument("--group", type=str.lower, choices=("sp", "so", "gl"))
    params.add_argument("--n", type=int)
    params.add_argument("--k", type=int)
    params.add_argument("--tau", help="comma list or JSON descriptor (default x1..xk)")
    params.add_argument("--tauprime", help="default y1..yk")
    params.add_argument("--pi", help="default a1..an")

    p = _Parser(prog="lcalc", description="Exact unramified L-factor and zeta-integral calculator.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    lf = sub.add_parser("lfactor", parents=[common, params], help="build a local L-factor")
    lf.add_argument("--kind", choices=("rs", "std", "sym2", "wedge2"), required=True)
    lf.add_argument("--arg", metavar="MU,TWO_NU")

    z = sub.add_parser("zeta", parents=[common, params], help="closed-form unramified integral")
    z.add_argument("--check", choices=("reduction",))

    d = sub.add_parser("dtau", parents=[common, params], help="normalizing factor d_tau(s)")
    d.add_argument("--check", choices=("telescoping",))

    o = sub.add_parser("orbit", help="partition and orbit combinatorics")
    osub = o.add_subparsers(dest="orbit_cmd", required=True, parser_class=_Parser)
    dom = osub.add_parser("dominance", parents=[common])
    dom.add_argument("lam")
    dom.add_argument("mu")
    dim = osub.add_parser("dim-bound", parents=[common])
    dim.add_argument("--k", type=int)
    dim.add_argument("--c", type=int)
    dim.add_argument("--lambda", dest="lam", required=True)
    dbo = osub.add_parser("doubling-orbit", parents=[common])
    dbo.add_argument("--group", type=str.lower, choices=("sp", "so", "gl"), required=True)
    dbo.add_argument("--k", type=int)
    dbo.add_argument("--c", type=int)
    val = osub.add_parser("validity", parents=[common])
    val.add_argument("--group", type=str.lower, choices=("sp", "so", "gl"), required=True)
    val.add_argument("--lambda", dest="lam", required=True)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("suite", choices=suites.SUITES + ("all",))
    v.add_argument("--trunc", type=int, default=12)
    v.add_argument("--seed", type=int, help=f"falls back to ${SEED_ENV}, then 0")
    v.add_argument("--max-n", type=int)
    v.add_argument("--max-k", type=int)
    v.add_argument("--numeric", action="store_true", help="check at seeded random rational points")
    v.add_argument("--timings", action="store_true", help="include elapsed times (breaks byte-stability)")
    return p


COMMANDS = {"lfactor": cmd_lfactor, "zeta": cmd_zeta, "dtau": cmd_dtau, "orbit": cmd_orbit, "verify": cmd_verify}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"lcalc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
