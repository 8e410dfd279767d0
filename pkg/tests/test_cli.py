import json
import subprocess
import sys

import pytest

from g2homog import __version__
from g2homog.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_octonion_passes(capsys):
    code, out, _ = run(capsys, "verify", "octonion")
    assert code == 0
    assert "64 basis pairs and 100 vector pairs" in out


def test_envelope_fields(capsys):
    code, env = run_json(capsys, "verify", "octonion")
    assert code == 0
    assert set(env) == {"command", "inputs", "status", "body", "engine_version"}
    assert env["command"] == "verify octonion"
    assert env["status"] == "pass"
    assert env["engine_version"] == __version__
    assert env["body"]["x1x2"] == ["0", "0", "0", "1", "0", "0", "0", "0"]


def test_corruption_hook(capsys):
    code, env = run_json(capsys, "verify", "octonion", "--corrupt", "1,2")
    assert code == 1
    assert env["status"] == "fail"
    assert env["body"]["witness"]


def test_corrupt_is_hidden(capsys):
    code, out, _ = run(capsys, "verify", "octonion", "--help")
    assert code == 0
    assert "--json" in out and "--corrupt" not in out


def test_bad_corrupt_argument(capsys):
    code, _, err = run(capsys, "verify", "octonion", "--corrupt", "x")
    assert code == 2
    assert "usage error" in err


def test_hodge(capsys):
    code, out, _ = run(capsys, "verify", "hodge")
    assert code == 0
    assert "-dx2345 + dx1346 + dx1256 - dx1247 + dx1357 + dx2367 + dx4567" in out


def test_hodge_reversed_orientation_fails(capsys):
    code, out, _ = run(capsys, "verify", "hodge", "--orientation", "-1")
    assert code == 1
    assert "mismatch" in out


def test_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "verify", "hodge", "--json")
    _, b, _ = run(capsys, "verify", "hodge", "--json")
    assert a == b


def test_pretty_env(capsys, monkeypatch):
    monkeypatch.setenv("G2HOMOG_PRETTY", "1")
    _, out, _ = run(capsys, "verify", "hodge", "--json")
    assert out.startswith("{\n  ")


def test_case_headline(capsys):
    code, env = run_json(capsys, "verify", "case", "su2su2-u1-t2")
    assert code == 0
    assert env["body"]["cosymplectic"] is True
    assert env["body"]["d_star_form"] == "0"
    assert "-2*e1245" in env["body"]["star_form"] and "2*e1267" in env["body"]["star_form"]


@pytest.mark.parametrize("name,label", [("t7", "{e}"), ("q111", "2u(1)")])
def test_case_labels(capsys, name, label):
    code, env = run_json(capsys, "verify", "case", name)
    assert code == 0
    assert env["body"]["matched_label"] == label


def test_unknown_case_lists_names(capsys):
    code, _, err = run(capsys, "verify", "case", "nope")
    assert code == 2
    assert "su2su2-u1-t2" in err


@pytest.mark.parametrize("lam", ["1", "-1", "3/2"])
def test_nk_product(capsys, lam):
    code, env = run_json(capsys, "verify", "nk-product", "--lambda", lam)
    assert code == 0
    assert env["body"]["d_star_omega"] == "0"


@pytest.mark.parametrize("lam", ["0", "abc", "1/0"])
def test_nk_product_bad_lambda(capsys, lam):
    code, _, _ = run(capsys, "verify", "nk-product", "--lambda", lam)
    assert code == 2


def test_aloff_wallach(capsys):
    code, env = run_json(capsys, "weights", "aloff-wallach", "1", "-1")
    assert code == 0
    assert env["body"]["plane_rates"] == [1, 1, 2]


@pytest.mark.parametrize("klm,expected", [(("1", "1", "1"), True), (("2", "1", "1"), False)])
def test_qklm(capsys, klm, expected):
    code, env = run_json(capsys, "check", "qklm", *klm)
    assert code == 0
    assert env["body"]["admits_invariant_g2"] is expected


def test_qklm_usage(capsys):
    code, _, _ = run(capsys, "check", "qklm", "1", "2", "3")
    assert code == 2


def test_table(capsys):
    code, env = run_json(capsys, "table", "g2-subgroups")
    assert code == 0
    assert len(env["body"]["rows"]) == 12


def test_enumerate(capsys):
    code, env = run_json(capsys, "enumerate", "--dim-h", "0")
    assert code == 0
    assert sorted(env["body"]["survivors"]) == ["2su(2)+u(1)", "7u(1)", "su(2)+4u(1)"]


def test_missing_subcommand(capsys):
    code, _, _ = run(capsys, "verify")
    assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "g2homog", "check", "qklm", "1", "1", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "true"
