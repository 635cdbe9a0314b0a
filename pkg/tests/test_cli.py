from __future__ import annotations

import json
import os
import subprocess
import sys

import pytest

from maclab import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fold_lines(capsys):
    code, out, _ = run(capsys, "fold", "A2", "(1 2)")
    assert code == 0 and out.splitlines()[0] == "L_0: B1; exps: a0=[1], a1=[2]"
    _, out, _ = run(capsys, "fold", "D4", "(1 3 4)")
    assert out.splitlines()[0] == "L_0: G2; exps: a0=[1,5], a1=[3], a2=[3]"
    _, out, _ = run(capsys, "fold", "--type", "A2", "--auto", "id")
    assert out.splitlines()[0] == "L_0: A2; exps [1,2]"


def test_fold_json(capsys):
    _, out, _ = run(capsys, "fold", "A3", "(1 3)", "--json")
    data = json.loads(out)
    assert data["folded_type"] == "C2" and data["eigenspace_dims"] == [10, 5]
    assert data["twisted_exponents"] == {"0": [1, 3], "1": [2]}


def test_parse_errors_exit_2(capsys):
    code, _, err = run(capsys, "fold", "A2", "(1 2")
    assert code == 2 and "position 0" in err
    code, _, err = run(capsys, "fold", "B2", "(1 2)")
    assert code == 2 and "(1, 2)" in err
    code, _, err = run(capsys, "cohomology", "A2", "(1 2)", "--N", "3")
    assert code == 2 and "multiple of k=2" in err


@pytest.mark.parametrize("argv, want", [
    (["cohomology", "A1", "id", "--full", "--N", "2", "--compare"], "1 + t^3 + q^3*t^3 + q^3*t^6"),
    (["cohomology", "A2", "(1 2)", "--full", "--N", "2", "--compare"], "1 + t^3 + q^5*t^5 + q^5*t^8"),
    (["cohomology", "A1", "id", "--iwahori-nil", "--N", "1", "--compare"], "1 + t + q^2*t^3 + q^2*t^4"),
    (["cohomology", "A1", "--iwahori", "--N", "1", "--relative", "--compare"], "1 + q*t^2"),
    (["cohomology", "A1", "--N", "2", "--t", "1", "--compare"], "{0: 1, 3: 2, 6: 1}"),
])
def test_cohomology_compare(capsys, argv, want):
    code, out, _ = run(capsys, *argv)
    assert code == 0 and "MATCH against" in out and want in out


def test_cohomology_mismatch_exit_1(capsys, monkeypatch):
    from maclab import qseries

    monkeypatch.setattr(qseries, "predict_truncated", lambda *a, **k: qseries.BiPoly.one())
    code, out, _ = run(capsys, "cohomology", "A1", "--N", "1", "--compare")
    assert code == 1 and "MISMATCH" in out


def test_constant_term(capsys):
    code, out, _ = run(capsys, "ct", "A1", "id", "--N", "2", "--json")
    data = json.loads(out)
    assert code == 0 and data == {"lhs": "1 + q + 2*q^2 + q^3 + q^4", "rhs_theorem": "1 + q + 2*q^2 + q^3 + q^4",
                                  "rhs_binomial": "1 + q + 2*q^2 + q^3 + q^4", "equal": True}
    code, out, _ = run(capsys, "constant-term", "A2", "(1 2)", "--N", "2")
    assert code == 0 and "equal" in out
    code, out, _ = run(capsys, "ct", "A2", "--finite", "--N", "1")
    assert code == 0 and "1 + 2*q + 2*q^2 + q^3" in out


def test_exponents(capsys):
    code, out, _ = run(capsys, "exponents", "E8")
    assert code == 0 and "|W| = 696729600" in out
    code, out, _ = run(capsys, "exponents", "E7", "--enumerate", "--cap-weyl", "1000")
    assert code == 0 and "not enumerated" in out


def test_superpoly_and_predict(capsys):
    code, out, _ = run(capsys, "superpoly-slice", "A1", "--sym-deg", "1", "--z-max", "2", "--compare")
    assert code == 0 and "coh=1 z=1 s=1: 1" in out
    code, out, _ = run(capsys, "superpoly-slice", "A1", "--sym-deg", "1", "--z-max", "2", "--N", "2")
    assert code == 2
    code, out, _ = run(capsys, "predict", "A2", "(1 2)", "--N", "2", "--json")
    assert json.loads(out)["generators"] == [[3, 0], [5, 5]]


def test_cocycle_check(capsys):
    code, out, _ = run(capsys, "cocycle-check", "A1", "--N", "3", "--iwahori", "--z-exp", "2")
    assert code == 0 and "closed=True" in out
    code, _, err = run(capsys, "cocycle-check", "B2", "--N", "1", "--z-exp", "0")
    assert code == 2 and "type A" in err


def test_output_is_deterministic():
    argv = [sys.executable, "-m", "maclab", "cohomology", "A2", "(1 2)", "--N", "2", "--json", "--compare"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    env = dict(os.environ, MACLAB_THREADS="2")
    b = subprocess.run(argv, capture_output=True, check=True, env=env).stdout
    assert a == b
