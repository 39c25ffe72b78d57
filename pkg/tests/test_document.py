"""Proof documents: golden output, determinism, re-ingestion."""

import re
from pathlib import Path

import pytest

from wzkit.certifier import Certificate, certify_identity
from wzkit.document import emit_proof_document
from wzkit.dsl import load_identity
from wzkit.poly import RatFunc, X
from wzkit.prover import prove_identity
from wzkit.records import loads

HERE = Path(__file__).resolve().parent
CORPUS = HERE.parent / "identities"
n, k = X("n"), X("k")


def _document(name, fmt="text", reproducible=True):
    identity = load_identity((CORPUS / name).read_text())
    report, cert = prove_identity(identity)
    return identity, report, emit_proof_document(report, identity, cert, fmt, reproducible)


def test_binomial_golden():
    _, _, doc = _document("binomial.wz")
    assert doc == (HERE / "golden" / "binomial.txt").read_text()


def test_binomial_document_content():
    _, _, doc = _document("binomial.wz")
    proof_lines = [line for line in doc.splitlines() if line.startswith("Proof")]
    assert proof_lines == ["Proof: -k/(2*(n - k + 1))"]
    assert "a(0) = 1" in doc
    assert "[FAILED]" not in doc


@pytest.mark.parametrize("fmt", ["text", "latex"])
def test_deterministic(fmt):
    assert _document("ramanujan.wz", fmt)[2] == _document("ramanujan.wz", fmt)[2]


def test_reproducible_flag_controls_footer():
    _, _, plain = _document("binomial.wz")
    _, _, stamped = _document("binomial.wz", reproducible=False)
    assert "generated by" not in plain
    assert stamped.startswith(plain.rstrip("\n")) and "generated by wzkit" in stamped


def test_remark_is_cited_not_checked():
    _, _, doc = _document("ramanujan.wz")
    assert "Carlson" in doc and "(cited, not checked)" in doc


def test_refuted_document_has_counterexample():
    _, report, doc = _document("false_shift.wz")
    assert report.verdict == "refuted"
    assert "FALSE" in doc and "at n = 0 the sum equals 1 but the right-hand side equals 2" in doc


def test_inconclusive_document_is_flagged():
    identity = load_identity("sum k: binomial(n,k) / 2^n == 1")
    report = certify_identity(identity, Certificate((RatFunc(k, 2 * (n - k - 1)),)))
    doc = emit_proof_document(report, identity, report.certificate)
    assert "DIAGNOSTIC - this is not a proof." in doc
    assert "Proof:" not in doc


def test_latex_layout():
    _, _, doc = _document("binomial.wz", "latex")
    assert doc.startswith("\\documentclass{article}")
    assert "\\begin{theorem}" in doc and "\\begin{proof}" in doc
    assert "-{k} \\over {2 (n - k + 1)}" in doc


def test_unknown_format():
    identity, report, _ = _document("binomial.wz")
    with pytest.raises(ValueError):
        emit_proof_document(report, identity, report.certificate, "html")


@pytest.mark.parametrize("path", sorted(CORPUS.glob("*.wz")), ids=lambda p: p.stem)
def test_proved_documents_reverify(path):
    identity, report, doc = _document(path.name)
    if report.verdict != "proved":
        return
    m = re.search(r"^Certificate record:\n  (.*)$", doc, re.MULTILINE)
    cert, _ = loads(m.group(1))
    assert certify_identity(identity, cert).verdict == "proved"
