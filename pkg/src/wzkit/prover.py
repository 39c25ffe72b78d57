"""Certificate search followed by certification: the whole pipeline for one identity."""

from __future__ import annotations

from typing import List, Optional

from .certifier import CertReport, Certificate, certify_identity, find_counterexample, pick_base_index
from .errors import NotHypergeometricError, RecurrenceNotFoundError, WZError
from .hyperterm import Identity, divide_by_rhs
from .multiwz import find_multi_ansatz
from .telescoper import wz_certificate_find, zeilberger


def _bare_report(identity: Identity, n0: int, notes: List[str]) -> CertReport:
    cx = find_counterexample(identity, n0)
    return CertReport("refuted" if cx else "inconclusive", False, False, False,
                      base_index=n0, counterexample=cx, notes=notes + list(identity.remarks),
                      identity=identity)


def find_certificate(identity: Identity, degree_bound: int, max_order: int, notes: List[str]) -> Optional[Certificate]:
    """Search for a certificate; failures are explained in ``notes``."""
    f = divide_by_rhs(identity).summand
    n = identity.main_var
    if identity.r == 1:
        k = identity.sum_vars[0]
        try:
            return wz_certificate_find(f, n, k)
        except WZError as exc:
            notes.append(str(exc))
        try:
            rec = zeilberger(f, max_order, n, k)
            notes.append(f"the normalized sum satisfies the order-{rec.order} recurrence {rec}")
        except RecurrenceNotFoundError as exc:
            notes.append(str(exc))
        return None
    cert = find_multi_ansatz(f, degree_bound, identity.sum_vars, n)
    if cert is None:
        notes.append(f"no certificate with numerator degree <= {degree_bound} in the ansatz")
    return cert


def prove_identity(identity: Identity, degree_bound: int = 3, max_order: int = 6,
                   n0: Optional[int] = None):
    """``(report, certificate)`` for ``identity``; the certificate may be ``None``."""
    if n0 is None:
        n0 = pick_base_index(identity)
    notes: List[str] = []
    try:
        cert = find_certificate(identity, degree_bound, max_order, notes)
    except NotHypergeometricError as exc:
        notes.append(str(exc))
        cert = None
    if cert is None:
        return _bare_report(identity, n0, notes), None
    report = certify_identity(identity, cert, n0)
    return report, report.certificate
