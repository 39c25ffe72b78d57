"""Command-line driver: subcommands and exit codes."""

import json
import subprocess
import sys
from pathlib import Path

import pytest

from wzkit.cli import main
from wzkit.records import read_certificate

CORPUS = Path(__file__).resolve().parent.parent / "identities"
BINOMIAL = str(CORPUS / "binomial.wz")


def test_prove_writes_document(tmp_path):
    out = tmp_path / "paper.txt"
    assert main(["prove", "--identity", BINOMIAL, "--emit", str(out)]) == 0
    assert "Proof: -k/(2*(n - k + 1))" in out.read_text()


def test_prove_then_verify(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert main(["prove", "--identity", BINOMIAL, "--certificate", str(cert)]) == 0
    assert read_certificate(str(cert))[0].r == 1
    assert main(["verify", "--identity", BINOMIAL, "--certificate", str(cert)]) == 0
    assert "Proof:" in capsys.readouterr().out


def test_verify_corrupted_certificate(tmp_path):
    cert = tmp_path / "cert.json"
    main(["prove", "--identity", BINOMIAL, "--certificate", str(cert), "--emit", str(tmp_path / "d.txt")])
    rec = json.loads(cert.read_text())
    rec["certificates"][0]["numerator"]["terms"][0][-1] = "1/3"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(rec))
    assert main(["verify", "--identity", BINOMIAL, "--certificate", str(bad)]) == 1
    junk = tmp_path / "junk.json"
    junk.write_text("{oops")
    assert main(["verify", "--identity", BINOMIAL, "--certificate", str(junk)]) == 1


def test_verify_rejects_certificate_for_other_identity(tmp_path):
    cert = tmp_path / "cert.json"
    main(["prove", "--identity", BINOMIAL, "--certificate", str(cert), "--emit", str(tmp_path / "d.txt")])
    assert main(["verify", "--identity", str(CORPUS / "central.wz"), "--certificate", str(cert)]) == 1


def test_multi_verify(tmp_path, capsys):
    cert = tmp_path / "tri.json"
    tri = str(CORPUS / "trinomial.wz")
    assert main(["prove", "--identity", tri, "--certificate", str(cert), "--emit", str(tmp_path / "t.txt")]) == 0
    assert main(["multi-verify", "--identity", tri, "--certificate", str(cert)]) == 0
    assert "telescoping relation: holds" in capsys.readouterr().err


def test_refuted_and_inconclusive_exit_codes(tmp_path):
    assert main(["prove", "--identity", str(CORPUS / "false_shift.wz"), "--emit", str(tmp_path / "a")]) == 1
    assert main(["prove", "--identity", str(CORPUS / "geometric.wz"), "--emit", str(tmp_path / "b")]) == 2


def test_ct(capsys):
    assert main(["ct", "--r", "2", "--a", "1"]) == 0
    assert capsys.readouterr().out.strip() == "2"


def test_ct_budget(monkeypatch, capsys):
    assert main(["ct", "--r", "3", "--a", "2", "--budget", "10"]) == 4
    assert "budget" in capsys.readouterr().err
    monkeypatch.setenv("EKHAD_BUDGET", "10")
    assert main(["ct", "--r", "3", "--a", "2"]) == 4
    assert main(["ct", "--r", "3", "--a", "2", "--budget", "100000"]) == 0
    monkeypatch.setenv("EKHAD_BUDGET", "lots")
    assert main(["ct", "--r", "2", "--a", "1"]) == 3


def test_sum(capsys):
    assert main(["sum", "--identity", str(CORPUS / "trinomial.wz"), "--n", "0", "--to", "4",
                 "--param", "x=1", "--param", "y=2", "--param", "z=3"]) == 0
    assert "n = 4: sum = 1296 == 1296" in capsys.readouterr().out
    assert main(["sum", "--identity", str(CORPUS / "false_shift.wz"), "--n", "0"]) == 1
    assert main(["sum", "--identity", str(CORPUS / "trinomial.wz"), "--n", "2"]) == 3


@pytest.mark.parametrize("argv,code", [
    (["oracle", "ahlgren-ono", "--n", "5"], 0),
    (["oracle", "beukers"], 0),
    (["oracle", "eta", "--order", "7"], 0),
    (["oracle", "apery", "--n", "3"], 0),
    (["oracle", "descent", "--A", "3", "--B", "2"], 0),
    (["oracle", "parable", "--n", "4"], 0),
    (["oracle", "beukers", "--p", "9"], 3),
])
def test_oracle(argv, code):
    assert main(argv) == code


@pytest.mark.parametrize("argv", [
    [],
    ["prove"],
    ["frobnicate"],
    ["ct", "--r", "0", "--a", "1"],
    ["ct", "--r", "two", "--a", "1"],
    ["prove", "--identity", "/nonexistent/x.wz"],
])
def test_usage_errors(argv):
    assert main(argv) == 3


def test_parse_error_exit_code(tmp_path, capsys):
    src = tmp_path / "bad.wz"
    src.write_text("sum k: factorial(n*k) == 1\n")
    assert main(["prove", "--identity", str(src)]) == 3
    assert "line 1, column 19" in capsys.readouterr().err


def test_batch_with_jobs_and_report(tmp_path):
    out = tmp_path / "docs"
    out.mkdir()
    report = tmp_path / "run.jsonl"
    names = ["binomial.wz", "central.wz", "false_shift.wz"]
    argv = ["prove", "--jobs", "2", "--emit", str(out), "--report", str(report)]
    for name in names:
        argv += ["--identity", str(CORPUS / name)]
    assert main(argv) == 1
    lines = [json.loads(x) for x in report.read_text().splitlines()]
    assert [x["verdict"] for x in lines] == ["proved", "proved", "refuted"]
    assert all(set(x) == {"identity", "verdict", "exit_code", "seconds", "certificate_hash"} for x in lines)
    assert lines[0]["certificate_hash"] and lines[2]["certificate_hash"] is None
    assert sorted(p.name for p in out.iterdir()) == ["binomial.txt", "central.txt", "false_shift.txt"]


def test_batch_documents_match_single_runs(tmp_path):
    out = tmp_path / "docs"
    out.mkdir()
    main(["prove", "--jobs", "2", "--emit", str(out), "--identity", BINOMIAL,
          "--identity", str(CORPUS / "ramanujan.wz")])
    single = tmp_path / "single.txt"
    main(["prove", "--identity", BINOMIAL, "--emit", str(single)])
    assert (out / "binomial.txt").read_bytes() == single.read_bytes()


def test_console_script_entry_point(tmp_path):
    r = subprocess.run([sys.executable, "-m", "wzkit.cli", "ct", "--r", "3", "--a", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "6"
