import json

import pytest

from lcalc import doubling as dbl
from lcalc import satake as sat
from lcalc import suites
from lcalc.cli import main
from lcalc.exactalg import FactoredLFunction, rf_equal
from lcalc.satake import ArgForm, SatakeSet


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_lfactor_wedge2(capsys):
    assert run(capsys, "lfactor", "--kind", "wedge2", "--tau", "x1,x2", "--arg", "1,0")[:2] == \
        (0, "(1 - x1*x2*X)^-1")


def test_lfactor_latex(capsys):
    code, out, _ = run(capsys, "lfactor", "--kind", "wedge2", "--tau", "x1,x2", "--arg", "1,0", "--format", "latex")
    assert code == 0 and out.startswith("L(")


def test_lfactor_json_descriptors(capsys):
    code, out, _ = run(capsys, "lfactor", "--kind", "rs", "--tau", '{"symbols":["x"]}',
                       "--tauprime", '{"values":["3/2","2/3"]}', "--arg", '{"mu":3,"two_nu":1}', "--format", "json")
    obj = json.loads(out)
    assert code == 0 and obj["arg"] == {"mu": 3, "two_nu": 1}
    assert obj["value"] == "(1 - 2/3*x*T*X^3)^-1 * (1 - 3/2*x*T*X^3)^-1"


def test_lfactor_missing_arg_is_usage_error(capsys):
    code, _, err = run(capsys, "lfactor", "--kind", "rs", "--tau", "x", "--tauprime", "x^-1")
    assert code == 2 and "--arg" in err


def test_lfactor_parse_error_points_at_column(capsys):
    code, _, err = run(capsys, "lfactor", "--kind", "std", "--tau", "x1,x^", "--arg", "1,0")
    assert code == 2
    assert "column" in err and "^" in err


def test_printed_output_round_trips(capsys):
    tau, tp, arg = SatakeSet.parse("x1,x2"), SatakeSet.parse("y1,y2^-1"), ArgForm(-2, 3)
    expected = {
        "rs": sat.l_rankin_selberg(tau, tp, arg),
        "std": sat.l_standard(tau, arg),
        "sym2": sat.l_sym2(tau, arg),
        "wedge2": sat.l_wedge2(tau, arg),
    }
    for kind, value in expected.items():
        code, out, _ = run(capsys, "lfactor", "--kind", kind, "--tau", "x1,x2", "--tauprime", "y1,y2^-1",
                           "--arg=-2,3")
        assert code == 0
        assert rf_equal(FactoredLFunction.parse(out), value)
    code, out, _ = run(capsys, "zeta", "--group", "sp", "--n", "2", "--k", "2")
    z = dbl.z_classical_closed("Sp", 2, 2, SatakeSet.symbols("a", 2), SatakeSet.symbols("x", 2)).value
    assert rf_equal(FactoredLFunction.parse(out), z)


def test_zeta_sp_n1(capsys):
    code, out, _ = run(capsys, "zeta", "--group", "sp", "--n", "1", "--k", "1")
    assert code == 0
    assert out == ("(1 - a1^-1*x1*T*X^3)^-1 * (1 - a1*x1*T*X^3)^-1 * (1 - x1*T*X^3)^-1"
                   " * (1 - x1*T^3*X^3) * (1 - x1^2*T^2*X^6)")


@pytest.mark.parametrize("argv", [
    ("zeta", "--group", "gl", "--n", "1", "--k", "2", "--check", "reduction"),
    ("zeta", "--group", "gl", "--n", "3", "--k", "1", "--check", "reduction"),
    ("zeta", "--group", "so", "--n", "2", "--k", "2", "--check", "reduction"),
])
def test_zeta_reduction_check(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.splitlines()[-1] == "reduction: PASS"


def test_zeta_invalid_rank(capsys):
    assert run(capsys, "zeta", "--group", "so", "--n", "0")[0] == 2
    assert run(capsys, "zeta", "--group", "sp", "--n", "2", "--k", "1", "--pi", "a")[0] == 2


def test_dtau(capsys):
    code, out, _ = run(capsys, "dtau", "--group", "sp", "--n", "1", "--k", "1", "--check", "telescoping")
    assert code == 0
    assert out.splitlines() == ["(1 - x1*T*X^3)^-1 * (1 - x1*T^3*X^3)", "telescoping: PASS"]
    assert run(capsys, "dtau", "--group", "gl", "--n", "1", "--k", "1")[0] == 2


def test_orbit_commands(capsys):
    assert run(capsys, "orbit", "dominance", "2,2", "2,1,1")[:2] == (0, "GREATER")
    assert run(capsys, "orbit", "dim-bound", "--k", "2", "--c", "2", "--lambda", "2,2")[:2] == (0, "1")
    assert run(capsys, "orbit", "doubling-orbit", "--group", "sp", "--k", "2", "--c", "4")[:2] == \
        (0, "3,3,3,3,1,1,1,1")
    assert run(capsys, "orbit", "validity", "--group", "sp", "--lambda", "3,1")[:2] == (0, "invalid")


def test_orbit_malformed(capsys):
    assert run(capsys, "orbit", "dominance", "2,a", "2")[0] == 2
    assert run(capsys, "orbit", "doubling-orbit", "--group", "sp", "--k", "2", "--c", "3")[0] == 2


def test_verify_doubling_passes(capsys):
    code, out, _ = run(capsys, "verify", "doubling", "--seed", "7")
    assert code == 0
    assert "FAIL" not in out
    assert out.splitlines()[-1].startswith("doubling (symbolic, seed 7):")


def test_verify_json_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ("verify", "algebra", "--trunc", "4", "--seed", "5", "--format", "json", "--output")
    assert main([*args, str(a)]) == 0
    assert main([*args, str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["schema"] == 1 and report["seed"] == 5
    assert report["totals"]["cases"] == len(report["cases"]) == report["totals"]["pass"]
    keys = [(c["identity"], c["digest"]) for c in report["cases"]]
    assert keys == sorted(keys)


def test_verify_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("LCALC_SEED", "99")
    code, out, _ = run(capsys, "verify", "orbits", "--format", "json")
    assert code == 0 and json.loads(out)["seed"] == 99
    monkeypatch.setenv("LCALC_SEED", "abc")
    assert run(capsys, "verify", "orbits")[0] == 2


def test_verify_timings_flag(capsys):
    code, out, _ = run(capsys, "verify", "satake", "--format", "json", "--timings")
    assert code == 0 and "elapsed_ms" in json.loads(out)["cases"][0]


def test_verify_injected_bad_identity(capsys, monkeypatch):
    original = suites.build_cases

    def with_bad(name, **kw):
        cases = original(name, **kw)
        cases.append(suites.equality_case(
            "algebra.injected_wrong", {},
            lambda: (FactoredLFunction.parse("(1 - x*X)^-1"), FactoredLFunction.parse("(1 - x^2*X)^-1"))))
        return cases

    monkeypatch.setattr(suites, "build_cases", with_bad)
    code, out, _ = run(capsys, "verify", "algebra", "--trunc", "3")
    assert code == 1
    assert "FAIL algebra.injected_wrong" in out
    assert "witness: leading term of difference" in out


def test_verify_bad_arguments(capsys):
    assert run(capsys, "verify", "algebra", "--trunc", "0")[0] == 2
    assert run(capsys, "verify", "nope")[0] == 2
    assert run(capsys)[0] == 2
