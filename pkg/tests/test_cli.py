import json
from importlib import resources

import pytest

from hopfcat.cli import main

DATA = resources.files("hopfcat.data")


def _p(name):
    return str(DATA / name)


def test_verify_hopf_ok(capsys):
    assert main(["verify", _p("sweedler_h4.hopf"), "--suite", "hopf"]) == 0
    assert "all checks passed" in capsys.readouterr().out


def test_verify_failing_yd_exits_one(capsys):
    assert main(["verify", _p("sweedler_yd0.struct"), "--suite", "yd", "--charge", "-1"]) == 1
    assert "[FAIL]" in capsys.readouterr().out
    assert main(["verify", _p("sweedler_yd0.struct"), "--suite", "yd", "--charge", "0"]) == 0


def test_missing_file_and_bad_usage_exit_two(capsys):
    assert main(["verify", "/nonexistent.hopf", "--suite", "hopf"]) == 2
    assert main(["verify", _p("kZ2.hopf"), "--suite", "bogus"]) == 2
    assert main([]) == 2


def test_malformed_file_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.hopf"
    bad.write_text("hopf x\nfield Q\ndim 2\nmult\n0 0 zz 1\n")
    assert main(["verify", str(bad), "--suite", "hopf"]) == 2
    assert "line 5" in capsys.readouterr().err


def test_compute_hat_then_verify(tmp_path, capsys):
    assert main(["compute", _p("sweedler_stable.struct"), "--what", "hat", "--charge", "0",
                 "--out", str(tmp_path)]) == 0
    out = tmp_path / "sweedler_stable.hat.struct"
    assert out.is_file()
    assert main(["verify", str(out), "--suite", "contramodule"]) == 0
    assert main(["verify", str(out), "--suite", "yd", "--charge", "1"]) == 0
    assert main(["compute", str(out), "--what", "prime", "--charge", "0", "--out", str(tmp_path)]) == 0
    assert main(["verify", str(tmp_path / "sweedler_stable.hat.prime.struct"), "--suite", "yd",
                 "--charge", "-1"]) == 0


def test_compute_wrong_charge_exits_two(tmp_path):
    assert main(["compute", _p("sweedler_stable.struct"), "--what", "hat", "--charge", "3",
                 "--out", str(tmp_path)]) == 2


def test_compute_integrals_and_sigma(capsys):
    assert main(["compute", "sweedler_h4", "--what", "integrals"]) == 0
    assert "dim J = 1" in capsys.readouterr().out
    assert main(["compute", _p("sweedler_stable.struct"), "--what", "sigma"]) == 0
    assert "sigma = id: true" in capsys.readouterr().out


def test_check_fd_equivalence_and_negative_control(capsys):
    assert main(["check", "sweedler_h4", "--property", "fd-equivalence", "--count", "2"]) == 0
    assert main(["check", "sweedler_h4", "--property", "fd-equivalence", "--no-twist", "--count", "2"]) == 1


def test_check_tau_center_on_struct_files():
    assert main(["check", _p("sweedler_stable.struct"), "--property", "tau-center"]) == 0
    assert main(["check", _p("sweedler_yd0.struct"), "--property", "tau-center"]) == 1


def test_json_output(tmp_path):
    js = tmp_path / "r.json"
    assert main(["verify", _p("kS3.hopf"), "--suite", "hopf", "--json", str(js)]) == 0
    data = json.loads(js.read_text())
    assert data


@pytest.mark.parametrize("group,scenario", [("S3", "kgeq"), ("Z2", "kgeq"), ("Z", "contratrace"),
                                            ("S3", "contratrace")])
def test_demo(group, scenario, capsys):
    assert main(["demo", "--group", group, "--scenario", scenario, "--count", "5"]) == 0
