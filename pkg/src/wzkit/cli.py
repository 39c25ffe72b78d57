"""Command-line driver.

Exit codes: 0 proved or success, 1 refuted or verification failed,
2 inconclusive, 3 usage or parse error, 4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import __version__
from .certifier import certify_identity
from .document import emit_proof_document
from .dsl import load_identity
from .errors import (BudgetExceededError, CertificateFormatError, DslError, NotHypergeometricError,
                     PoleError, SupportError, TruncationError)
from .hyperterm import Identity, divide_by_rhs
from .multiwz import DEFAULT_BUDGET, MultiCert, constant_term, verify_multi
from .prover import prove_identity
from .records import certificate_hash, identity_hash, read_certificate, write_certificate
from . import oracle

EXIT_PROVED = 0
EXIT_FAILED = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3
EXIT_BUDGET = 4

_VERDICT_CODE = {"proved": EXIT_PROVED, "refuted": EXIT_FAILED, "inconclusive": EXIT_INCONCLUSIVE}
_SUFFIX = {"text": ".txt", "latex": ".tex"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _env_budget() -> int:
    raw = os.environ.get("EKHAD_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"EKHAD_BUDGET must be an integer, got {raw!r}") from None
    if value < 0:
        raise UsageError("EKHAD_BUDGET must be nonnegative")
    return value


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative: {value}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _param(text: str):
    name, sep, value = text.partition("=")
    if not sep or not name.isidentifier():
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    try:
        return name, Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {value!r}") from None


def read_identity(path: str) -> Identity:
    try:
        src = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return load_identity(src)
    except DslError as exc:
        raise UsageError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# proving one identity


@dataclass
class Outcome:
    """Result of one identity in a batch."""

    path: str
    code: int
    verdict: str
    seconds: float = 0.0
    cert_hash: Optional[str] = None
    document: Optional[str] = None
    messages: List[str] = field(default_factory=list)

    def report_line(self) -> str:
        return json.dumps({"identity": self.path, "verdict": self.verdict, "exit_code": self.code,
                           "seconds": round(self.seconds, 4), "certificate_hash": self.cert_hash},
                          sort_keys=True)


def _output_path(base: Optional[str], source: str, suffix: str, batch: bool) -> Optional[str]:
    if base is None:
        return None
    if not batch:
        return base
    return str(Path(base) / (Path(source).stem + suffix))


def run_prove(path: str, opts: Dict) -> Outcome:
    start = time.perf_counter()
    identity = read_identity(path)
    report, cert = prove_identity(identity, opts["degree_bound"], opts["max_order"], opts["base_index"])
    doc = emit_proof_document(report, identity, cert, opts["format"])
    out = Outcome(path, _VERDICT_CODE[report.verdict], report.verdict)
    batch = opts["batch"]
    emit = _output_path(opts["emit"], path, _SUFFIX[opts["format"]], batch)
    if emit:
        Path(emit).write_text(doc, encoding="utf-8")
    else:
        out.document = doc
    if cert is not None and report.proved:
        out.cert_hash = certificate_hash(identity, cert)
        target = _output_path(opts["certificate"], path, ".json", batch)
        if target:
            write_certificate(target, identity, cert)
    out.seconds = time.perf_counter() - start
    return out


def run_verify(path: str, opts: Dict) -> Outcome:
    start = time.perf_counter()
    identity = read_identity(path)
    out = Outcome(path, EXIT_FAILED, "failed")
    try:
        cert, rec = read_certificate(opts["certificate"])
    except OSError as exc:
        raise UsageError(f"cannot read {opts['certificate']}: {exc.strerror}") from None
    except CertificateFormatError as exc:
        out.messages.append(f"bad certificate: {exc}")
        out.seconds = time.perf_counter() - start
        return out
    mismatch = rec.get("identity_hash") not in (None, identity_hash(identity))
    if mismatch:
        out.messages.append("certificate was issued for a different identity")
    if cert.r != identity.r:
        out.messages.append(f"certificate has {cert.r} rational functions, identity has {identity.r} sums")
        out.seconds = time.perf_counter() - start
        return out
    if opts.get("multi"):
        f = divide_by_rhs(identity).summand
        ok, res = verify_multi(f, MultiCert(cert.rs, cert.convention), identity.sum_vars, identity.main_var)
        out.messages.append("telescoping relation: " + ("holds" if ok else f"fails, residual {res}"))
    report = certify_identity(identity, cert, opts["base_index"])
    doc = emit_proof_document(report, identity, report.certificate, opts["format"])
    if opts["emit"]:
        Path(opts["emit"]).write_text(doc, encoding="utf-8")
    else:
        out.document = doc
    if report.proved and not mismatch:
        out.code, out.verdict = EXIT_PROVED, "proved"
        out.cert_hash = certificate_hash(identity, report.certificate)
    else:
        out.verdict = report.verdict if report.verdict != "proved" else "failed"
    out.seconds = time.perf_counter() - start
    return out


def _guarded(task, path: str, opts: Dict) -> Outcome:
    start = time.perf_counter()
    try:
        return task(path, opts)
    except UsageError as exc:
        return Outcome(path, EXIT_USAGE, "error", time.perf_counter() - start, messages=[str(exc)])
    except BudgetExceededError as exc:
        return Outcome(path, EXIT_BUDGET, "budget", time.perf_counter() - start, messages=[str(exc)])
    except (PoleError, SupportError, NotHypergeometricError, CertificateFormatError) as exc:
        return Outcome(path, EXIT_INCONCLUSIVE, "inconclusive", time.perf_counter() - start,
                       messages=[str(exc)])


def _prove_task(args):
    return _guarded(run_prove, *args)


def _verify_task(args):
    return _guarded(run_verify, *args)


def _run_batch(task, paths: Sequence[str], opts: Dict, jobs: int, report: Optional[str]) -> int:
    items = [(p, opts) for p in paths]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(task, items))
    else:
        outcomes = [task(it) for it in items]
    for o in outcomes:
        for m in o.messages:
            print(m if m.startswith(o.path) else f"{o.path}: {m}", file=sys.stderr)
        if o.document is not None:
            sys.stdout.write(o.document)
        if len(outcomes) > 1:
            print(f"{o.path}: {o.verdict}", file=sys.stderr)
    if report:
        with open(report, "w", encoding="utf-8") as fh:
            for o in outcomes:
                fh.write(o.report_line() + "\n")
    return max(o.code for o in outcomes)


def _common_opts(args, batch: bool) -> Dict:
    return {
        "emit": args.emit,
        "certificate": getattr(args, "certificate", None),
        "format": args.format,
        "max_order": getattr(args, "max_order", 6),
        "degree_bound": getattr(args, "degree_bound", 3),
        "base_index": args.base_index,
        "batch": batch,
    }


def cmd_prove(args) -> int:
    batch = len(args.identity) > 1
    for target in (args.emit, args.certificate):
        if batch and target and not Path(target).is_dir():
            raise UsageError(f"{target} must be an existing directory when proving several identities")
    return _run_batch(_prove_task, args.identity, _common_opts(args, batch), args.jobs, args.report)


def cmd_verify(args, multi: bool = False) -> int:
    opts = _common_opts(args, False)
    opts["multi"] = multi
    return _run_batch(_verify_task, [args.identity], opts, 1, args.report)


def cmd_ct(args) -> int:
    try:
        value = constant_term(args.r, args.a, args.budget)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(value)
    return EXIT_PROVED


def cmd_sum(args) -> int:
    identity = read_identity(args.identity)
    params = dict(args.param)
    missing = set(identity.params) - set(params)
    if missing:
        raise UsageError(f"give a value for parameter(s) {', '.join(sorted(missing))} with --param")
    ns = range(args.n, (args.to if args.to is not None else args.n) + 1)
    code = EXIT_PROVED
    for n in ns:
        try:
            lhs, rhs = oracle.identity_values(identity, n, params)
        except (PoleError, SupportError) as exc:
            print(f"n = {n}: {exc}", file=sys.stderr)
            code = max(code, EXIT_INCONCLUSIVE)
            continue
        mark = "==" if lhs == rhs else "!="
        print(f"n = {n}: sum = {lhs} {mark} {rhs}")
        if lhs != rhs:
            code = EXIT_FAILED
    return code


def cmd_oracle(args) -> int:
    ok = True
    if args.which == "ahlgren-ono":
        for n in range(1, args.n + 1):
            v = oracle.ahlgren_ono_eval(n)
            ok &= v == 0
            print(f"n = {n}: {v}")
    elif args.which == "apery":
        for n in range(args.n + 1):
            print(f"A({n}) = {oracle.apery(n)}")
    elif args.which == "eta":
        print(oracle.eta_product(args.order))
    elif args.which == "beukers":
        try:
            for p in args.p:
                rep = oracle.beukers_check(p, args.order)
                ok &= rep.congruent
                print(f"p = {p}: A = {rep.A_val}, a(p) = {rep.a_val}, congruent mod p^2: {rep.congruent}")
        except (ValueError, TruncationError) as exc:
            raise UsageError(str(exc)) from None
    elif args.which == "descent":
        try:
            steps = oracle.descent_chain(args.A, args.B)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        for s in steps:
            ok &= s.invariant_ok
            print(f"({s.A}, {s.B}) -> ({s.a}, {s.b}): A^2 - 2B^2 = {s.before}, a^2 - 2b^2 = {s.after}")
        sym = oracle.sqrt2_invariant_symbolic()
        ok &= sym
        print(f"symbolic invariant: {sym}")
    elif args.which == "parable":
        for n in range(1, args.n + 1):
            v = oracle.parable_check(n)
            ok &= v
            print(f"n = {n}: {v}")
    return EXIT_PROVED if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    budget = _env_budget()
    p = _Parser(prog="wzkit", description="Find and check WZ certificates for summation identities.")
    p.add_argument("--version", action="version", version=f"wzkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def doc_flags(q):
        q.add_argument("--emit", metavar="PATH", help="write the proof document here (stdout by default)")
        q.add_argument("--format", choices=("text", "latex"), default="text")
        q.add_argument("--base-index", type=_nonneg, metavar="N0", help="base case index")
        q.add_argument("--report", metavar="PATH", help="write a JSON-lines run report")

    q = sub.add_parser("prove", help="find a certificate and emit a proof document")
    q.add_argument("--identity", required=True, action="append", metavar="PATH",
                   help="identity file; repeat for a batch")
    q.add_argument("--certificate", metavar="PATH", help="write the certificate record here")
    q.add_argument("--max-order", type=_positive, default=6, metavar="N",
                   help="largest recurrence order to try (default 6)")
    q.add_argument("--degree-bound", type=_nonneg, default=3, metavar="D",
                   help="degree bound of the multi-sum ansatz (default 3)")
    q.add_argument("--jobs", type=_positive, default=1, metavar="N", help="worker processes for a batch")
    doc_flags(q)

    for name, help_ in (("verify", "check a certificate record against an identity"),
                        ("multi-verify", "check a multi-sum certificate record")):
        q = sub.add_parser(name, help=help_)
        q.add_argument("--identity", required=True, metavar="PATH")
        q.add_argument("--certificate", required=True, metavar="PATH")
        doc_flags(q)

    q = sub.add_parser("ct", help="constant term of prod_{i != j} (1 - z_i/z_j)^a")
    q.add_argument("--r", type=_positive, required=True, help="number of variables")
    q.add_argument("--a", type=_nonneg, required=True, help="exponent")
    q.add_argument("--budget", type=_nonneg, default=budget, metavar="OPS",
                   help="coefficient-operation limit (default from EKHAD_BUDGET)")

    q = sub.add_parser("sum", help="evaluate both sides of an identity exactly")
    q.add_argument("--identity", required=True, metavar="PATH")
    q.add_argument("--n", type=int, required=True, help="value of the main variable")
    q.add_argument("--to", type=int, metavar="N", help="last n of a range")
    q.add_argument("--param", type=_param, action="append", default=[], metavar="NAME=VALUE",
                   help="value for a parameter; repeat as needed")

    q = sub.add_parser("oracle", help="independent exact checks")
    q.add_argument("which", choices=("ahlgren-ono", "apery", "eta", "beukers", "descent", "parable"))
    q.add_argument("--n", type=_nonneg, default=10, help="upper index (ahlgren-ono, apery, parable)")
    q.add_argument("--order", type=_nonneg, default=20, help="q-series truncation order")
    q.add_argument("--p", type=int, action="append", metavar="P", help="prime for beukers; repeat as needed")
    q.add_argument("--A", type=int, default=3, help="descent starting pair")
    q.add_argument("--B", type=int, default=2)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "oracle" and args.which == "beukers" and not args.p:
            args.p = [3, 5, 7, 11, 13]
        if args.command == "prove":
            return cmd_prove(args)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "multi-verify":
            return cmd_verify(args, multi=True)
        if args.command == "ct":
            return cmd_ct(args)
        if args.command == "sum":
            return cmd_sum(args)
        return cmd_oracle(args)
    except UsageError as exc:
        print(f"wzkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
