import csv
import json
import subprocess
import sys

import pytest

from landau_toeplitz import __version__
from landau_toeplitz.cli import main

FAST = ["--n-theta", "16", "--n-phi", "16"]


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv_report(text):
    lines = text.splitlines()
    assert lines[0].startswith("# ")
    meta = json.loads(lines[0][2:])
    return meta, list(csv.DictReader(lines[1:]))


def test_index_n1(capsys):
    code, out, _ = run(capsys, "index", "--n", "1", "--level", "0", "--symbol", "coordinate:1", "--D", "30")
    assert code == 0
    report = json.loads(out)
    assert report["result"]["index"] == -1
    assert report["result"]["stabilized"] is True
    assert report["version"] == __version__
    assert report["config"]["symbol"] == "coordinate:1" and report["config"]["D"] == 30
    assert {"D", "ker", "coker"} == set(report["result"]["history"][0])


def test_index_constant(capsys):
    code, out, _ = run(capsys, "index", "--n", "2", "--level", "0,0", "--symbol", "constant")
    assert code == 0 and json.loads(out)["result"]["index"] == 0


def test_index_not_fredholm(capsys):
    code, out, err = run(capsys, "index", "--n", "2", "--level", "0,0", "--symbol", "coordinate:1")
    assert code == 3 and out == ""
    payload = json.loads(err)
    assert payload["error"] == "not_fredholm"
    assert len(payload["witness"]) == 2


def test_index_not_stabilized(capsys):
    code, out, _ = run(capsys, "index", "--n", "1", "--level", "0", "--symbol", "coordinate:1",
                       "--D", "16", "--rank-tolerance", "0.99")
    assert code == 2 and json.loads(out)["result"]["stabilized"] is False


@pytest.mark.parametrize("argv", [
    ["index", "--n", "2", "--level", "0", "--symbol", "su2"],
    ["index", "--n", "0", "--symbol", "constant"],
    ["index", "--n", "1", "--D", "-3"],
    ["index", "--n", "1", "--symbol", "z7 * |z|^-1"],
    ["index", "--n", "1", "--level", "0", "--full-level", "1"],
    ["bogus"],
    ["chern", "--n", "1", "--symbol", "su2"],
])
def test_malformed_config(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == ""
    assert "error" in json.loads(err)


def test_verify_su2(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--level", "0,0", "--symbol", "su2", "--D", "12", *FAST)
    result = json.loads(out)["result"]
    assert code == 0
    assert result["analytic_index"] == result["topological_index"] == -1


def test_verify_full_level(capsys):
    code, out, _ = run(capsys, "verify", "--n", "2", "--full-level", "1", "--symbol", "su2", "--D", "10", *FAST)
    result = json.loads(out)["result"]
    assert code == 0
    assert result["analytic_index"] == result["topological_index"] == -2
    assert result["multiplicity"] == 2


def test_chern_zpow(capsys):
    code, out, _ = run(capsys, "chern", "--n", "1", "--symbol", "zpow:3")
    result = json.loads(out)["result"]
    assert code == 0 and result["nearest_integer"] == -3
    assert set(result) == {"n", "symbol", "value_re", "value_im", "nearest_integer", "quadrature_nodes", "converged"}


def test_compare_bergman_csv(capsys):
    code, out, _ = run(capsys, "compare-bergman", "--n", "1", "--D", "5")
    meta, rows = read_csv_report(out)
    assert code == 0 and meta["version"] == __version__
    assert list(rows[0]) == ["absm", "m", "lambda_eta", "lambda_mu_exact", "lambda_mu_paper", "diff", "diff_times_absm"]
    assert len(rows) == 6
    assert float(rows[0]["lambda_mu_exact"]) == pytest.approx(0.9428090415820634)


def test_commutator_decay_csv(capsys):
    code, out, _ = run(capsys, "commutator-decay", "--n", "1", "--level", "0", "--symbol", "coordinate:1",
                       "--degrees", "5,10,20", "--K", "4")
    _, rows = read_csv_report(out)
    shell = [float(r["shell_norm"]) for r in rows]
    assert code == 0 and shell[0] > shell[1] > shell[2] and shell[2] < 0.2


def test_spectrum_and_kernel(capsys):
    code, out, _ = run(capsys, "spectrum", "--n", "1", "--level", "0", "--symbol", "coordinate:1", "--D", "4")
    _, rows = read_csv_report(out)
    assert code == 0 and len(rows) == 5
    code, out, _ = run(capsys, "kernel", "--n", "1", "--level", "1", "--samples", "4")
    _, rows = read_csv_report(out)
    assert code == 0 and list(rows[0]) == ["z", "w", "re", "im"] and len(rows) == 4


def test_reports_are_byte_identical_and_atomic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        code, out, _ = run(capsys, "index", "--n", "2", "--level", "1,0", "--symbol", "su2", "--D", "8",
                           "--output", str(p))
        assert code == 0 and out == ""
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert sorted(x.name for x in tmp_path.iterdir()) == ["a.json", "b.json"]


def test_csv_output_format_for_index(tmp_path, capsys):
    path = tmp_path / "h.csv"
    run(capsys, "index", "--n", "1", "--level", "0", "--symbol", "zpow:2", "--D", "12", "--format", "csv",
        "--output", str(path))
    _, rows = read_csv_report(path.read_text())
    assert {r["coker"] for r in rows} == {"2"}


def test_console_script_with_thread_env(tmp_path):
    env = {"LANDAU_TOEPLITZ_THREADS": "1", "PATH": "/usr/bin:/bin"}
    proc = subprocess.run([sys.executable, "-m", "landau_toeplitz.cli", "chern", "--n", "1", "--symbol", "zpow:-1"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    assert json.loads(proc.stdout)["result"]["nearest_integer"] == 1
    env["LANDAU_TOEPLITZ_THREADS"] = "many"
    proc = subprocess.run([sys.executable, "-m", "landau_toeplitz.cli", "chern", "--n", "1", "--symbol", "zpow:1"],
                          capture_output=True, text=True, env=env)
    assert proc.returncode == 1
