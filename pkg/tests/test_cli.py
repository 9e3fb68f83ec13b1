import csv
import io
import json
import subprocess
import sys

import mpmath
import pytest

from hesse.cli import main, run

B_MINUS2 = "-5.40214356416769755850355621723"


def _json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_regulator_example(capsys):
    code, out = _json(capsys, ["regulator", "--t", "-2", "--element", "xi_zeta", "--cycle", "B",
                               "--digits", "30"])
    assert code == 0
    assert out["outputs"]["over_2pi_i"]["re"] == B_MINUS2
    assert list(out) == sorted(out)


def test_round_trip_digits():
    for D in (15, 22, 30):
        res, _ = run(["regulator", "--t", "-1/2", "--element", "xi_hesse", "--cycle", "gamma",
                      "--digits", str(D)])
        with mpmath.workdps(60):
            printed = mpmath.mpf(res.outputs["over_2pi_i"])
            from fractions import Fraction

            from hesse.numerics import PrecisionContext
            from hesse.regulator import reg_hesse

            ref = reg_hesse(Fraction(-1, 2), PrecisionContext(50))
            assert abs(printed - ref) < mpmath.mpf(10) ** (1 - D)
        assert printed != 0


def test_negative_values_parse(capsys):
    code, out = _json(capsys, ["integrality", "--t", "-11/9"])
    assert code == 0
    assert out["inputs"]["t"] == "-11/9"
    assert out["outputs"]["integral"] is False


def test_csv_output(capsys):
    code = main(["qtable", "--from", "-3", "--to", "-1", "--digits", "15", "--csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [(r["three_t"], r["Q_rational"], r["status"]) for r in rows] == [
        ("-3", "-27/2", "match"), ("-2", "-35/4", "match"), ("-1", "-7", "match")]
    assert rows[0]["Q"] == "-13.5"


def test_hyper_and_kdf(capsys):
    code, out = _json(capsys, ["hyper", "--upper", "1/3,1/3", "--lower", "2/3", "--x", "1/2"])
    assert code == 0
    with mpmath.workdps(40):
        ref = mpmath.hyp2f1(mpmath.mpf(1) / 3, mpmath.mpf(1) / 3, mpmath.mpf(2) / 3, 0.5)
        assert abs(mpmath.mpf(out["outputs"]["value"]) - ref) < mpmath.mpf(10) ** -29
    code, out = _json(capsys, ["hyper", "--kdf", "1,2,1/3,1/3,2/3,1", "--x", "1/5", "--y", "1/5"])
    assert code == 0


def test_other_commands(capsys):
    for argv in (["periods", "--t", "2/5"], ["mahler", "--t", "-2", "--digits", "15"],
                 ["lvalue", "--a4", "-1", "--a6", "0", "--digits", "15"],
                 ["regdet", "--which", "minus2", "--digits", "15"],
                 ["integrality", "--t", "-1/2", "--element", "xi_prime_half"]):
        code, out = _json(capsys, argv)
        assert code == 0, argv
        assert out["command"] == argv[0]


@pytest.mark.parametrize("argv", [
    ["regulator", "--t", "2", "--element", "xi_zeta"],       # branch undefined
    ["regulator", "--t", "abc", "--element", "xi_zeta"],     # unparsable
    ["periods", "--t", "1", "--digits", "10"],               # digits too low
    ["mahler", "--t", "1/2"],                                # inside the triangle
    ["hyper", "--upper", "1", "--lower", "0", "--x", "1/2"],  # pole
])
def test_usage_errors_exit_two(capsys, argv):
    assert main(argv) == 2
    assert capsys.readouterr().err


def test_argparse_error_exit_two(capsys):
    assert main(["regulator", "--t", "1/2", "--element", "nope"]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hesse", "integrality", "--t", "4/3"],
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["integral"] is True


def test_verify_fast(capsys):
    code = main(["verify", "--suite", "fast", "--digits", "15"])
    err = capsys.readouterr().err
    assert "PASS" in err
    assert code in (0, 1)
