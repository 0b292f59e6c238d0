import json
import shutil
import subprocess

import pytest

from tenspec.cli import main


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out else None), out.err


U2 = {"n": 1, "d": 2, "kind": "ps", "coeffs": ["2", "0", "0", "2"]}
DIAG = {"n": 1, "d": 2, "kind": "ps", "coeffs": ["2", "0", "0", "5"]}


def test_charpoly_of_scaled_unit(tmp_path, capsys):
    code, rep, _ = run(["charpoly", "--tensor", write(tmp_path, "t.json", U2)], capsys)
    assert code == 0 and rep["ok"]
    assert rep["schema"] == "tenspec/1" and rep["command"] == "charpoly"
    assert rep["result"]["coeffs"] == ["-4", "4"]


def test_eigen_of_diagonal_tensor(tmp_path, capsys):
    code, rep, _ = run(["eigen", "--tensor", write(tmp_path, "t.json", DIAG), "--vectors"], capsys)
    assert code == 0
    evs = {(round(e["lambda"][0], 9), e["multiplicity"]) for e in rep["result"]["eigenvalues"]}
    assert evs == {(2.0, 1), (5.0, 1)}
    assert len(rep["result"]["eigenscheme"]["pairs"]) == 2


def test_malformed_inputs_exit_1(tmp_path, capsys):
    bad = dict(U2, coeffs=["2", "oops", "0", "2"])
    code, rep, err = run(["charpoly", "--tensor", write(tmp_path, "b.json", bad)], capsys)
    assert code == 1 and rep is None and "coeffs[1]" in err
    code, _, err = run(["charpoly", "--tensor", write(tmp_path, "j.json", "{not json")], capsys)
    assert code == 1
    code, _, _ = run(["charpoly"], capsys)
    assert code == 1
    code, _, _ = run(["hurwitz", "--n", "1", "--d", "3", "--trials", "0"], capsys)
    assert code == 1


def test_same_seed_gives_identical_bytes(capsys):
    outs = []
    for _ in range(2):
        assert main(["hurwitz", "--n", "1", "--d", "3", "--trials", "20", "--seed", "7"]) == 0
        outs.append(capsys.readouterr().out.encode())
    assert outs[0] == outs[1]


def test_env_seed_overrides_flag(monkeypatch, capsys):
    monkeypatch.setenv("TENSPEC_SEED", "123")
    code, rep, _ = run(["rank", "--n", "1", "--d", "3", "--seed", "5"], capsys)
    assert code == 0 and rep["config"]["seed"] == 123
    assert rep["result"]["rank"] == 4


def test_cubic_commands_and_csv(tmp_path, capsys):
    code, rep, _ = run(["cubic", "classify", "--form", "x0*x1^2 - x2^3"], capsys)
    assert code == 0 and rep["result"]["label"] == "cuspidal"
    csv_path = tmp_path / "m.csv"
    code, rep, _ = run(["cubic", "multiplicities", "--trials", "3", "--csv", str(csv_path)], capsys)
    assert code == 0
    assert csv_path.read_text().splitlines()[0] == "label,expected,match"


def test_fiber_command(tmp_path, capsys):
    phi = {"n": 1, "d": 3, "coeffs": ["0", "-3", "0", "-4"]}
    code, rep, err = run(["fiber", "--n", "1", "--d", "3", "--charpoly", write(tmp_path, "p.json", phi)], capsys)
    assert code in (0, 1), err
    if code == 0:
        assert rep["result"]["count"] == len(rep["result"]["solutions"])


def test_verify_binary_reports_criterion_5(capsys):
    code, rep, err = run(["verify", "--suite", "binary"], capsys)
    # criterion 5 compares against a displayed identity with a sign discrepancy
    assert code == 2
    assert rep["result"]["failed"] == [5]
    assert "PASS criterion 4" in err and "FAIL criterion 5" in err
    assert "seconds" not in json.dumps(rep)


@pytest.mark.skipif(shutil.which("tenspec") is None, reason="console script not installed")
def test_console_script_runs():
    proc = subprocess.run(["tenspec", "rank", "--n", "1", "--d", "4"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["rank"] == 5
