import io
import json
import subprocess
import sys

import pytest

from permtri.cli import main, parse_moduli, parse_range, UsageError


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_parse_range():
    assert parse_range("2..4") == (2, 3, 4)
    assert parse_range("-2..1,5") == (-2, -1, 0, 1, 5)
    for bad in ("4..2", "a", "1..b"):
        with pytest.raises(UsageError):
            parse_range(bad)


def test_parse_moduli():
    assert parse_moduli(["b", "0x43"]) == ((3, 0xB), (6, 0x43))
    with pytest.raises(UsageError):
        parse_moduli(["zz"])


def test_verify_t42():
    code, out = run("verify", "--families", "T42", "--m", "2..8", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("family_id,m,")
    got = {int(l.split(",")[1]): l.split(",")[5] for l in lines[1:]}
    assert got == {m: "true" if m in (2, 6) else "false" for m in range(2, 9)}


def test_verify_table_and_json():
    code, out = run("verify", "--families", "T314A,P26", "--m", "3", "--k-range=-1..1")
    assert code == 0 and "# 4 instances, 0 disagreements" in out
    code, out = run("verify", "--families", "EX315-F1", "--m", "1..3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["instances"] == 3 and doc["disagreements"] == 0


def test_verify_guard_exit(capsys):
    code, _ = run("verify", "--families", "T42", "--m", "30..31")
    assert code == 3
    assert "skipped T42 m=30" in capsys.readouterr().err


def test_verify_unknown_family():
    assert run("verify", "--families", "NOPE")[0] == 2


def test_verify_jobs_identical():
    args = ("verify", "--families", "F1-THM33,EX315-PARAM", "--m", "2..3", "--format", "csv")
    assert run(*args) == run(*args, "--jobs", "3")


def test_check():
    code, out = run("check", "x + x^3 + x^5", "--m", "3")
    assert code == 0 and out.startswith("permutation of GF(2^3)")
    code, out = run("check", "x^5 + x^(q+4) + x^(5*q)", "--m2m", "3", "--zieve", "9", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["permutation"] is False and doc["criterion"] is False
    code, out = run("check", "x^5 + x^(q+4) + x^(5*q)", "--m2m", "2", "--zieve", "5")
    assert code == 0 and "criterion: true" in out


def test_check_usage_errors():
    assert run("check", "x", "--m", "3", "--m2m", "2")[0] == 2
    assert run("check", "x +", "--m", "3")[0] == 2
    assert run("check", "x", "--m", "40")[0] == 3


def test_check_with_modulus_override():
    a = run("check", "x^3 + x^5 + x", "--m", "3")[1]
    b = run("check", "x^3 + x^5 + x", "--m", "3", "--modulus", "d")[1]
    assert a.splitlines()[0] == b.splitlines()[0]


def test_mu_check():
    code, out = run("mu-check", "x^4+x^3+x", "x^3+x+1", "--m", "3")
    assert code == 0 and out.startswith("does not biject")
    code, out = run("mu-check", "x^4+x^3+x", "x^3+x+1", "--m", "4")
    assert out.startswith("bijects")
    assert run("mu-check", "1", "x+1", "--m", "3")[0] == 2


def test_qm():
    code, out = run("qm", "x^2 + x^4 + x^6", "x + x^3 + x^5", "--m", "3")
    assert code == 0 and "x^6" in out
    code, out = run("qm", "x + x^2", "x + x^3", "--m", "3", "--format", "json")
    assert json.loads(out) == {"equivalent": False, "witness": None}


def test_lucas():
    assert run("lucas", "10", "3", "2") == (0, "0\n")
    assert run("lucas", "7", "3", "3") == (0, "2\n")
    assert run("lucas", "7", "3", "4")[0] == 2


def test_congruences():
    code, out = run("congruences", "7")
    assert code == 0 and out.strip().endswith("all hold")
    assert run("congruences", "6")[0] == 2


def test_console_script_entry():
    r = subprocess.run(
        [sys.executable, "-m", "permtri.cli", "lucas", "5", "2", "2"], capture_output=True, text=True, check=False
    )
    assert r.returncode == 0 and r.stdout == "0\n"
