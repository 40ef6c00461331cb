import csv
import io
import json
import subprocess
import sys

import pytest

from besselgspin.bessel import bessel_value, s_delta
from besselgspin.cli import main
from besselgspin.exactalg import LaurentPoly, RationalFunction
from besselgspin.rankinselberg import zeta_local_series
from besselgspin.rootdata import SatakeSpec


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_compute_identity_value(capsys):
    code, out, _ = run(capsys, "compute", "bessel", "--n", "2", "--torus", "nonsplit", "--delta", "0,0")
    assert code == 0
    data = json.loads(out)
    assert data["text"] == "1" and data["laurent"] is True


def test_compute_matches_library(capsys):
    code, out, _ = run(capsys, "compute", "bessel", "--n", "1", "--torus", "split", "--delta", "1")
    value = RationalFunction.from_json(json.loads(out)["value"])
    assert code == 0 and value == bessel_value(SatakeSpec(1, "split"), (1,))
    code, out, _ = run(capsys, "compute", "sdelta", "--n", "2", "--torus", "split", "--delta", "1,0")
    value = RationalFunction.from_json(json.loads(out)["value"])
    assert code == 0 and value == s_delta((1, 0), SatakeSpec(2, "split"))


def test_compute_csv(capsys):
    code, out, _ = run(capsys, "compute", "bessel", "--n", "1", "--delta", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["part", "monomial", "coef"]
    assert ["den", "v^2", "1"] in rows


@pytest.mark.parametrize("argv", [
    ["compute", "bessel", "--n", "2", "--delta", "0,1"],
    ["compute", "bessel", "--n", "2", "--delta", "1,0,0"],
    ["compute", "bessel", "--n", "2", "--delta", "a,b"],
    ["compute", "bessel", "--n", "2", "--torus", "ramified", "--delta", "0,0"],
    ["verify", "corollary", "--n", "2", "--order", "2"],
    ["verify", "corollary", "--n", "2", "--l", "2", "--order", "2"],
    ["verify", "a8", "--n", "1", "--mode", "fast", "--prime", "101"],
    ["series", "d", "--n", "1", "--order", "-1"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        sys.exit(main(argv))
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["verify", "a8", "--n", "2", "--torus", "split", "--order", "4"],
    ["verify", "claim", "--n", "2", "--torus", "nonsplit", "--order", "4"],
    ["verify", "a8", "--n", "2", "--order", "0"],
    ["verify", "bfg1", "--n", "1", "--order", "3", "--mode", "fast", "--seed", "4"],
    ["verify", "corollary", "--n", "3", "--l", "1", "--order", "2"],
])
def test_verify_passes(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    data = json.loads(out)
    assert data["pass"] is True
    assert [c["degree"] for c in data["coefficients"]] == list(range(data["order"] + 1))


def test_verify_failure_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "a8", "--n", "2", "--order", "1", "--convention", "index")
    assert code == 1 and json.loads(out)["pass"] is False


def test_series_rows(capsys):
    code, out, _ = run(capsys, "series", "d", "--n", "1", "--order", "0", "--format", "csv")
    assert code == 0 and out == "degree,coefficient\n0,1\n"
    code, out, _ = run(capsys, "series", "d", "--n", "2", "--order", "3", "--format", "csv")
    assert len(out.strip().splitlines()) == 1 + 4


def test_series_zeta_matches_library(capsys):
    code, out, _ = run(capsys, "series", "zeta", "--n", "1", "--torus", "split", "--order", "2")
    data = json.loads(out)
    lib = zeta_local_series(1, SatakeSpec(1, "split"), 2)
    assert [LaurentPoly.from_json(c["coef"]) for c in data["coefficients"]] == list(lib.coeffs)


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run(capsys, "series", "extsquare", "--n", "2", "--order", "2", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["coefficients"][2]["text"] == "s0^2*g1*g2"


def _cli(*argv, env=None):
    return subprocess.run([sys.executable, "-m", "besselgspin", *argv], capture_output=True, env=env, check=False)


def test_byte_identical_runs_and_job_counts():
    import os

    argv = ["verify", "claim", "--n", "2", "--order", "3", "--mode", "fast", "--seed", "9"]
    first = _cli(*argv)
    second = _cli(*argv)
    threaded = _cli(*argv, env={**os.environ, "BESSELGSPIN_JOBS": "2"})
    assert first.returncode == 0
    assert first.stdout == second.stdout == threaded.stdout


def test_module_entry_usage_error():
    proc = _cli("compute", "bessel", "--n", "1", "--delta", "-1")
    assert proc.returncode == 2 and b"not dominant" in proc.stderr


def test_conventions_report_command(capsys):
    code, out, _ = run(capsys, "report", "conventions")
    assert code == 0
    assert json.loads(out)["lemma_bh_index"]["resolution"]["consistent_variants"] == ["l_n decrement weighted by z1"]
