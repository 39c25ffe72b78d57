"""Proof documents in the one-line-certificate style.

A proved document states the identity, gives the certificate on a single
line, lists the checks that make it a proof, and embeds the machine-readable
certificate record.  Output depends only on its inputs.
"""

from __future__ import annotations

from typing import List, Optional

from . import __version__
from .certifier import CertReport, Certificate
from .hyperterm import Identity, divide_by_rhs
from .poly import MultiPoly, RatFunc
from .records import dumps

TITLE = "A One-Line Proof of a Summation Identity"

_RELATION = {
    "forward": "F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k)",
    "backward": "F(n+1,k) - F(n,k) = G(n,k) - G(n,k-1)",
    "forward-negated": "F(n+1,k) - F(n,k) = G(n,k) - G(n,k+1)",
    "backward-negated": "F(n+1,k) - F(n,k) = G(n,k-1) - G(n,k)",
}


def _relation(convention: str, sum_vars) -> str:
    if len(sum_vars) == 1:
        return _RELATION[convention].replace("k", sum_vars[0])
    step = "+1" if convention.startswith("forward") else "-1"
    sign = "-" if convention.endswith("negated") else ""
    return (f"F(n+1) - F(n) = {sign}sum_i [G_i(k_i{step}) - G_i(k_i)]"
            if step == "+1" else f"F(n+1) - F(n) = {sign}sum_i [G_i(k_i) - G_i(k_i{step})]")


def _mark(ok: bool) -> str:
    return "passed" if ok else "FAILED"


def _value(v) -> str:
    if v is None:
        return "undefined"
    return v.display() if isinstance(v, RatFunc) else str(v)


def _poly_latex(p: MultiPoly, order=()) -> str:
    return p.format(order).replace("*", " ")


def ratfunc_latex(r: RatFunc, order=()) -> str:
    """LaTeX fraction; ``order`` as in :meth:`RatFunc.display`."""
    if r.num.is_zero():
        return "0"
    num, den = r.num, r.den
    if order and not den.is_constant() and den.terms[den._ordered_monomials(order)[0]] < 0:
        num, den = -num, -den
    c = num.content()
    if num.leading_coefficient() < 0:
        c = -c
    sign = "-" if c < 0 else ""
    a, b = abs(c.numerator), c.denominator
    p = num.scale(1 / c)
    top = _poly_latex(p, order)
    if len(p.terms) > 1 and a != 1:
        top = f"({top})"
    if a != 1:
        top = str(a) if p.is_constant() else f"{a} {top}"
    if den.is_constant() and b == 1:
        return sign + top
    bottom = "" if den.is_constant() else _poly_latex(den, order)
    if b != 1:
        bottom = str(b) if not bottom else f"{b} ({bottom})"
    return f"{sign}{{{top}}} \\over {{{bottom}}}"


def _order(identity: Identity):
    return (identity.main_var,) + tuple(identity.sum_vars)


def _cert_lines(cert: Certificate, identity: Identity) -> List[str]:
    order = _order(identity)
    if cert.r == 1:
        return [f"Proof: {cert.rs[0].display(order)}"]
    return ["Proof:"] + [f"  R_{i + 1} = {R.display(order)}   (for {v})"
                         for i, (R, v) in enumerate(zip(cert.rs, identity.sum_vars))]


def _text(report: CertReport, identity: Identity, cert: Certificate, reproducible: bool) -> str:
    out: List[str] = [TITLE, "=" * len(TITLE), ""]
    sv = identity.sum_vars
    n0 = report.base_index
    out += ["Theorem.", f"  {identity.display()}", ""]
    if report.verdict == "proved":
        conv = report.convention or cert.convention
        out += _cert_lines(cert, identity)
        out.append("")
        out.append("Verification recipe.")
        out.append(f"  Let F = {divide_by_rhs(identity).summand}, so that the claim reads sum F = 1.")
        if cert.r == 1:
            out.append("  With G := R F, where R is the certificate above, the relation")
        else:
            out.append("  With G_i := R_i F, where R_i are the certificates above, the relation")
        out.append(f"      {_relation(conv, sv)}")
        out.append(f"  divided by F is an identity of rational functions [{_mark(report.rational_identity_holds)}].")
        for line in report.boundary_evidence:
            out.append(f"  {line}")
        out.append("  So the mates have finite support and summing the relation gives")
        out.append(f"  a(n+1) - a(n) = 0 for a(n) := sum F [{_mark(report.boundary_ok)}].")
        out.append(f"  Base case: a({n0}) = {_value(report.base_case_value)} [{_mark(report.base_case_ok)}].")
        out.append(f"  Hence a(n) = 1 for every n >= {n0}.")
        out.append("")
        out.append(f"Convention: {conv}")
        out.append("Certificate record:")
        out.append(f"  {dumps(identity, cert.with_convention(conv))}")
    elif report.verdict == "refuted":
        out.append("The identity is FALSE.")
        cx = report.counterexample or {}
        if cx:
            n = identity.main_var
            out.append(f"Counterexample: at {n} = {cx.get(n)} the sum equals {cx.get('sum')} "
                       f"but the right-hand side equals {cx.get('rhs')}.")
    else:
        out.append("DIAGNOSTIC - this is not a proof.")
    if report.verdict == "inconclusive" and cert is None:
        out.append("  No certificate was found.")
    elif report.verdict == "inconclusive":
        out.append(f"  Certificate tried: {cert}")
        out.append(f"  rational identity: {_mark(report.rational_identity_holds)}")
        out.append(f"  boundary:          {_mark(report.boundary_ok)}")
        out.append(f"  base case:         {_mark(report.base_case_ok)} (a({n0}) = {_value(report.base_case_value)})")
    notes = [x for x in report.notes if x not in identity.remarks]
    if notes:
        out += ["", "Notes."] + [f"  - {x}" for x in notes]
    if identity.remarks:
        out += ["", "Remarks."] + [f"  - {x} (cited, not checked)" for x in identity.remarks]
    if not reproducible:
        out += ["", f"-- generated by wzkit {__version__}"]
    return "\n".join(out) + "\n"


def _latex(report: CertReport, identity: Identity, cert: Certificate, reproducible: bool) -> str:
    sv = identity.sum_vars
    lhs = " ".join(f"\\sum_{{{v}}}" for v in sv) + " " + identity.summand.latex()
    rhs = " + ".join(t.latex() for t in identity.rhs)
    out = [
        "\\documentclass{article}",
        "\\usepackage{amsthm}",
        "\\newtheorem*{theorem}{Theorem}",
        "\\begin{document}",
        f"\\section*{{{TITLE}}}",
        "\\begin{theorem}",
        f"$$ {lhs} = {rhs} $$",
        "\\end{theorem}",
    ]
    n0 = report.base_index
    if report.verdict == "proved":
        conv = report.convention or cert.convention
        out.append("\\begin{proof}")
        if cert.r == 1:
            out.append(f"$$ {ratfunc_latex(cert.rs[0], _order(identity))} $$")
        else:
            for i, R in enumerate(cert.rs):
                out.append(f"$$ R_{{{i + 1}}} = {ratfunc_latex(R, _order(identity))} $$")
        out.append("\\end{proof}")
        out.append("\\paragraph{Verification.}")
        out.append(f"The relation ${_relation(conv, sv)}$ with $G = R F$ holds as an identity "
                   f"of rational functions; the mates have finite support; and $a({n0}) = "
                   f"{_value(report.base_case_value)}$.")
        out.append("\\paragraph{Certificate record.}")
        out.append("\\begin{verbatim}")
        out.append(dumps(identity, cert.with_convention(conv)))
        out.append("\\end{verbatim}")
    elif report.verdict == "refuted":
        cx = report.counterexample or {}
        n = identity.main_var
        out.append(f"The identity is false: at ${n} = {cx.get(n)}$ the sum is "
                   f"${cx.get('sum')}$ and the right-hand side is ${cx.get('rhs')}$.")
    else:
        out.append("\\paragraph{Diagnostic (not a proof).}")
        for x in report.notes:
            out.append(f"{x}\\\\")
    if identity.remarks:
        out.append("\\paragraph{Remarks.}")
        for x in identity.remarks:
            out.append(f"{x} (cited, not checked).\\\\")
    if not reproducible:
        out.append(f"\\par\\noindent\\emph{{generated by wzkit {__version__}}}")
    out.append("\\end{document}")
    return "\n".join(out) + "\n"


def emit_proof_document(report: CertReport, identity: Identity, cert: Optional[Certificate] = None,
                        format: str = "text", reproducible: bool = True) -> str:
    """Render ``report`` as a text or LaTeX document.

    ``reproducible`` drops the generation footer so the output is a pure
    function of the mathematical content.
    """
    cert = cert or report.certificate
    if format == "text":
        return _text(report, identity, cert, reproducible)
    if format == "latex":
        return _latex(report, identity, cert, reproducible)
    raise ValueError(f"unknown format {format!r}")
