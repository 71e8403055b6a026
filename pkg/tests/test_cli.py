import json
import subprocess
import sys
from pathlib import Path

import pytest

from sl2classes.cli import RunConfig, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.rstrip("\n"), out.err


@pytest.mark.parametrize("argv,expected", [
    (["product", "C2[++] * C2[++] * C2[++]"], "{I}^c"),
    (["product", "C3[1/2] * C3[1/2] * C3[1/2] * C3[1/2]"], "{-I}^c"),
    (["product", "--group", "PSL2", "C4[2] * C4[2]"], "G~"),
    (["--group", "PSL2", "product", "C2[++] * C2[++]"], "G~ \\ {I~}"),
    (["product", "C3[1/3] * -I"], "C3[4/3]"),
    (["classify", "0,-1,1,0"], "C3[1/2]"),
    (["classify", "2,0,0,0.5"], "C4[2]"),
    (["classify", "--group", "PSL2", "--", "-1,0,-1,-1"], "C2[++]~"),
    (["covering"], "cn=4 ecn=4\ncn witness: C3[1/2]\necn witness: C2[++] * C2[+-] * C3[1/12]"),
])
def test_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_figure1_csv(capsys):
    code, out, _ = run(capsys, "figure1", "--step", "1/12")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "alpha,beta,gamma,contains_I"
    assert len(lines) == 1 + 22 ** 3
    assert "1/2,1/2,1/2,false" in lines
    assert "1/3,1/3,4/3,true" in lines


def test_figure1_signed(capsys):
    code, out, _ = run(capsys, "figure1", "--step", "1/4", "--signed")
    assert code == 0
    assert out.splitlines()[1].startswith("-3/4,-3/4,-3/4,")


def test_tables_golden(capsys):
    code, out, _ = run(capsys, "tables")
    assert code == 0
    assert out == (GOLDEN / "tables.txt").read_text().rstrip("\n")


def test_json_outputs(capsys):
    _, out, _ = run(capsys, "--json", "product", "C2[++] * C2[++] * C2[++]")
    obj = json.loads(out)
    assert obj["result"] == "{I}^c" and obj["set"]["I"] is False
    _, out, _ = run(capsys, "tables", "--json")
    assert len(json.loads(out)) == len((GOLDEN / "tables.txt").read_text().splitlines())
    _, out, _ = run(capsys, "covering", "--json")
    assert json.loads(out)["cn"] == 4


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "2000", "C3[1/2] * C3[1/2]")
    assert code == 0
    assert out.startswith("C3[1/2] * C3[1/2] | 2000 | 0 | coverage 3/3 | trace [")
    code, out, _ = run(capsys, "--json", "verify", "--trials", "500", "C2[++] * C2[+-]")
    assert code == 0 and json.loads(out)["violations"] == []


@pytest.mark.parametrize("argv,code", [
    (["product", "C3[1/3"], 2),
    (["product", "C5[1]"], 2),
    (["classify", "1,2,x,4"], 2),
    (["classify", "1,2,3"], 2),
    (["--trials", "0", "covering"], 2),
    (["--tol", "0.5", "covering"], 2),
    (["classify", "2,0,0,1"], 3),
    (["product", "C3[0,1] * C3[0,1]"], 3),
    (["product", "C3[1]"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err


def test_parse_error_caret(capsys):
    _, _, err = run(capsys, "product", "C2[++] * C2[+x]")
    lines = err.splitlines()
    assert lines[-1].index("^") == lines[-2].index("C2[+x]") + 4


def test_run_config():
    assert RunConfig() == RunConfig(0, 10**4, 1e-9, 360, "text", "SL2")
    with pytest.raises(ValueError):
        RunConfig(trials=0)


def test_output_is_byte_stable():
    cmd = [sys.executable, "-m", "sl2classes.cli", "--seed", "3", "verify", "--trials", "300",
           "C3[1/3] * C2[++]"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
