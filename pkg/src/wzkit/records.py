"""Certificate records: a versioned JSON encoding of a certificate.

Each rational function is stored as numerator and denominator coefficient
lists, so a record can be re-verified without trusting any display form.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Dict, Tuple

from . import __version__
from .certifier import CONVENTIONS, Certificate
from .errors import CertificateFormatError
from .hyperterm import Identity
from .poly import RatFunc

FORMAT = "wzkit-certificate"
VERSION = 1


def identity_hash(identity: Identity) -> str:
    """SHA-256 of the canonical display form of ``identity``."""
    return hashlib.sha256(identity.display().encode("utf-8")).hexdigest()


def certificate_record(identity: Identity, cert: Certificate) -> Dict[str, Any]:
    return {
        "format": FORMAT,
        "version": VERSION,
        "identity_hash": identity_hash(identity),
        "identity": identity.display(),
        "convention": cert.convention,
        "r": cert.r,
        "sum_vars": list(identity.sum_vars),
        "certificates": [R.to_record() for R in cert.rs],
        "engine_version": __version__,
    }


def dumps(identity: Identity, cert: Certificate) -> str:
    return json.dumps(certificate_record(identity, cert), sort_keys=True, separators=(",", ":"))


def certificate_hash(identity: Identity, cert: Certificate) -> str:
    return hashlib.sha256(dumps(identity, cert).encode("utf-8")).hexdigest()[:16]


def loads(text: str) -> Tuple[Certificate, Dict[str, Any]]:
    """Parse a record; returns the certificate and the raw record."""
    try:
        rec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"certificate record is not valid JSON: {exc}") from None
    if not isinstance(rec, dict):
        raise CertificateFormatError("certificate record must be a JSON object")
    if rec.get("format") != FORMAT:
        raise CertificateFormatError(f"unknown record format {rec.get('format')!r}")
    if rec.get("version") != VERSION:
        raise CertificateFormatError(f"unsupported record version {rec.get('version')!r}")
    convention = rec.get("convention", "forward")
    if convention not in CONVENTIONS:
        raise CertificateFormatError(f"unknown convention {convention!r}")
    items = rec.get("certificates")
    if not isinstance(items, list) or not items:
        raise CertificateFormatError("record has no certificates")
    if rec.get("r", len(items)) != len(items):
        raise CertificateFormatError("field r disagrees with the number of certificates")
    try:
        rs = tuple(RatFunc.from_record(item) for item in items)
    except CertificateFormatError:
        raise
    except Exception as exc:
        raise CertificateFormatError(f"malformed certificate entry: {exc}") from None
    return Certificate(rs, convention), rec


def read_certificate(path: str) -> Tuple[Certificate, Dict[str, Any]]:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def write_certificate(path: str, identity: Identity, cert: Certificate) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(json.dumps(certificate_record(identity, cert), sort_keys=True, indent=2))
        fh.write("\n")
