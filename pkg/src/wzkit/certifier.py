"""Checking WZ certificates.

A certificate ``R`` for a normalized summand ``F`` (so that ``sum_k F = 1``)
defines the mate ``G = R F``.  The proof has three parts, each checked here:

1. the telescoping relation between ``F`` and ``G``, which after dividing by
   ``F`` is a polynomial identity (checked symbolically);
2. ``G`` vanishes outside a finite range of ``k``, so summing the relation
   over ``k`` gives ``a(n+1) - a(n) = 0``;
3. the base case ``a(n0) = 1``.

The same machinery handles several summation variables, where ``R_i`` is the
certificate attached to ``k_i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import CertificateFormatError, NotHypergeometricError, PoleError
from .hyperterm import HyperTerm, Identity, LinForm, divide_by_rhs, support_box
from .poly import ONE, MultiPoly, RatFunc

# Orientation of the telescoping relation, with G = R F:
#   forward           F(n+1,k) - F(n,k) = G(n,k+1) - G(n,k)
#   backward          F(n+1,k) - F(n,k) = G(n,k) - G(n,k-1)
#   forward-negated   F(n+1,k) - F(n,k) = G(n,k) - G(n,k+1)
#   backward-negated  F(n+1,k) - F(n,k) = G(n,k-1) - G(n,k)
CONVENTIONS = ("forward", "backward", "forward-negated", "backward-negated")

WINDOW = 9
# generic values for free parameters in pointwise (non-verdict-critical) checks
SPECIAL_PARAMS = (101, 103, 107, 109, 113, 127)
FRINGE = 2


@dataclass(frozen=True)
class Certificate:
    rs: Tuple[RatFunc, ...]
    convention: str = "forward"

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise CertificateFormatError(f"unknown convention {self.convention!r}")
        object.__setattr__(self, "rs", tuple(RatFunc.coerce(r) for r in self.rs))
        if not self.rs:
            raise CertificateFormatError("a certificate needs at least one rational function")

    @property
    def r(self) -> int:
        return len(self.rs)

    def with_convention(self, convention: str) -> "Certificate":
        return Certificate(self.rs, convention)

    def __str__(self):
        return ", ".join(r.display() for r in self.rs)


@dataclass
class CertReport:
    verdict: str
    rational_identity_holds: bool
    boundary_ok: bool
    base_case_ok: bool
    base_case_value: Optional[RatFunc] = None
    base_index: int = 0
    residual: Optional[MultiPoly] = None
    boundary_evidence: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    counterexample: Optional[Dict[str, object]] = None
    convention: Optional[str] = None
    identity: Optional[Identity] = None
    certificate: Optional[Certificate] = None

    @property
    def proved(self) -> bool:
        return self.verdict == "proved"


# ---------------------------------------------------------------------------
# the rational identity


def _delta_term(R: RatFunc, rho: RatFunc, k: str, convention: str) -> RatFunc:
    """``(Delta G)/F`` for ``G = R F`` under ``convention``; ``rho = F(k+1)/F(k)``."""
    if convention.startswith("forward"):
        d = R.shift(k, 1) * rho - R
    else:
        d = R - R.shift(k, -1) / rho.shift(k, -1)
    return -d if convention.endswith("negated") else d


def telescoping_residual(f: HyperTerm, rs: Sequence[RatFunc], sum_vars: Sequence[str],
                         convention: str = "forward", n: str = "n") -> MultiPoly:
    """Numerator of ``F(n+1)/F(n) - 1 - sum_i (Delta_i G_i)/F``; zero iff the
    telescoping relation holds as an identity of rational functions."""
    if len(rs) != len(sum_vars):
        raise CertificateFormatError(
            f"{len(rs)} certificate(s) for {len(sum_vars)} summation variable(s)")
    lhs = f.shift_quotient(n) - 1
    for R, k in zip(rs, sum_vars):
        R = RatFunc.coerce(R)
        if R.is_zero():
            continue
        lhs = lhs - _delta_term(R, f.shift_quotient(k), k, convention)
    return lhs.num


def verify_wz_rational(f: HyperTerm, cert: Certificate, n: str = "n", k: str = "k") -> Tuple[bool, MultiPoly]:
    """Symbolic check of the WZ relation under ``cert.convention``."""
    res = telescoping_residual(f, cert.rs, (k,), cert.convention, n)
    return res.is_zero(), res


def matching_conventions(f: HyperTerm, rs: Sequence[RatFunc], sum_vars: Sequence[str],
                         n: str = "n") -> List[str]:
    return [c for c in CONVENTIONS if telescoping_residual(f, rs, sum_vars, c, n).is_zero()]


def verify_recurrence(f: HyperTerm, coefficients: Sequence[MultiPoly], R: RatFunc,
                      n: str = "n", k: str = "k") -> Tuple[bool, MultiPoly]:
    """Check ``sum_j c_j(n) F(n+j,k) = G(n,k+1) - G(n,k)`` with ``G = R F``."""
    r_n = f.shift_quotient(n)
    lhs = RatFunc(MultiPoly())
    rho = RatFunc(ONE)
    for j, c in enumerate(coefficients):
        lhs = lhs + RatFunc(c) * rho
        rho = rho * r_n.shift(n, j)
    res = lhs - _delta_term(RatFunc.coerce(R), f.shift_quotient(k), k, "forward")
    return res.is_zero(), res.num


# ---------------------------------------------------------------------------
# boundary and base case


def _points(box):
    return itertools.product(*(range(lo, hi + 1) for lo, hi in box))


def _safe_eval(t: Optional[HyperTerm], point) -> RatFunc:
    if t is None:
        return RatFunc(MultiPoly())
    return t.evaluate_symbolic(point)


def exact_sum_symbolic(f: HyperTerm, sum_vars: Sequence[str], point, ranges=None) -> RatFunc:
    """``sum f`` over its support (or the given explicit ranges) at ``point``."""
    box = _resolve_box([f], sum_vars, point, ranges)
    if box is None:
        raise NotHypergeometricError("summand has no finite support; a range is required")
    total = RatFunc(MultiPoly())
    for ks in _points(box):
        pt = dict(point)
        pt.update(zip(sum_vars, ks))
        total = total + f.evaluate_symbolic(pt)
    return total


def _resolve_box(terms, sum_vars, point, ranges=None):
    if ranges and any(rg is not None for rg in ranges):
        box = []
        nat = support_box(terms, sum_vars, point)
        for i, rg in enumerate(ranges):
            if rg is None:
                if nat is None:
                    return None
                box.append(nat[i])
            else:
                lo, hi = rg
                box.append((int(lo.evaluate(point)), int(hi.evaluate(point))))
        return box
    return support_box(terms, sum_vars, point)


def _mates(f: HyperTerm, rs: Sequence[RatFunc]) -> List[Optional[HyperTerm]]:
    return [None if R.is_zero() else f.mul_ratfunc(R) for R in rs]


def _covers_support(f: HyperTerm, v: str, rg: Tuple[LinForm, LinForm], n: str = "n") -> bool:
    lo, hi = f.natural_support(v).tightest((n,))
    if lo is None or hi is None:
        return False
    dlo, dhi = lo - rg[0], rg[1] - hi
    return dlo.is_constant() and dlo.const >= 0 and dhi.is_constant() and dhi.const >= 0


def verify_support_and_base(f: HyperTerm, cert: Certificate, n0: int = 0,
                            sum_vars: Sequence[str] = ("k",), n: str = "n",
                            ranges=None, window: int = WINDOW):
    """Boundary vanishing of the mates and the base case ``a(n0) = 1``.

    Returns ``(boundary_ok, evidence, base_ok, base_value, notes)``.
    """
    notes: List[str] = []
    evidence: List[str] = []
    if ranges is not None and any(rg is not None for rg in ranges):
        for v, rg in zip(sum_vars, ranges):
            if rg is not None and not _covers_support(f, v, rg, n):
                notes.append(
                    f"explicit range for {v} does not contain the natural support; "
                    "boundary terms are not controlled")
                return False, evidence, False, None, notes
        ranges = None
    for v in sum_vars:
        if not f.natural_support(v).is_finite((n,)):
            notes.append("requires analytic tail bound, out of scope")
            return False, evidence, False, None, notes
    try:
        mates = _mates(f, cert.rs)
    except (NotHypergeometricError, ValueError) as exc:
        notes.append(f"could not form the mate in closed form: {exc}")
        return False, evidence, False, None, notes

    for i, (v, G) in enumerate(zip(sum_vars, mates)):
        if G is None:
            evidence.append(f"mate for {v} is identically zero")
            continue
        lo, hi = G.natural_support(v).tightest((n,))
        label = f"G_{i + 1}" if len(sum_vars) > 1 else "G"
        evidence.append(f"{label} = {G}")
        evidence.append(
            f"{label} vanishes for {v} < {lo if lo is not None else '-oo'} "
            f"and {v} > {hi if hi is not None else 'oo'}")

    boundary_ok = all(G is None or all(G.natural_support(v).is_finite((n,)) for v in sum_vars)
                      for G in mates)
    if not boundary_ok:
        notes.append("a mate has unbounded support")

    params = sorted(set(f.variables) - set(sum_vars) - {n})
    special = {v: SPECIAL_PARAMS[i % len(SPECIAL_PARAMS)] for i, v in enumerate(params)}
    for m in range(n0, n0 + window):
        if not boundary_ok:
            break
        pt = {n: m, **special}
        terms = [f, f.shift(n, 1)] + [G for G in mates if G is not None]
        box = support_box(terms, sum_vars, pt)
        if box is None:
            boundary_ok = False
            notes.append(f"no finite box at {n} = {m}")
            break
        outer = [(lo - FRINGE, hi + FRINGE) for lo, hi in box]
        try:
            for ks in _points(outer):
                p = dict(pt)
                p.update(zip(sum_vars, ks))
                inside = all(lo <= x <= hi for x, (lo, hi) in zip(ks, box))
                if not inside:
                    for G in mates:
                        if G is not None and not G.evaluate_symbolic(p).is_zero():
                            boundary_ok = False
                            notes.append(f"mate does not vanish at {p}")
                if all(lo - 1 <= x <= hi + 1 for x, (lo, hi) in zip(ks, box)):
                    lhs = _safe_eval(f, {**p, n: m + 1}) - _safe_eval(f, p)
                    rhs = RatFunc(MultiPoly())
                    for v, G in zip(sum_vars, mates):
                        rhs = rhs + _pointwise_delta(G, p, v, cert.convention)
                    if lhs != rhs:
                        boundary_ok = False
                        notes.append(f"telescoping relation fails at the integer point {p}")
                if not boundary_ok:
                    break
        except PoleError as exc:
            boundary_ok = False
            notes.append(f"pole while evaluating the mate: {exc}")
    if boundary_ok:
        at = ", ".join(f"{v} = {x}" for v, x in special.items())
        evidence.append(f"fringe evaluation confirmed for {n} = {n0}..{n0 + window - 1}"
                        + (f" at {at}" if at else ""))

    try:
        base = exact_sum_symbolic(f, sum_vars, {n: n0})
    except PoleError as exc:
        notes.append(f"base case undefined: {exc}")
        return boundary_ok, evidence, False, None, notes
    return boundary_ok, evidence, base == RatFunc(ONE), base, notes


def _pointwise_delta(G: Optional[HyperTerm], p, v: str, convention: str) -> RatFunc:
    if G is None:
        return RatFunc(MultiPoly())
    here = G.evaluate_symbolic(p)
    if convention.startswith("forward"):
        d = G.evaluate_symbolic({**p, v: p[v] + 1}) - here
    else:
        d = here - G.evaluate_symbolic({**p, v: p[v] - 1})
    return -d if convention.endswith("negated") else d


# ---------------------------------------------------------------------------
# the full pipeline


def pick_base_index(identity: Identity, start: int = 0, limit: int = 64) -> int:
    """Smallest ``n0 >= start`` where the right-hand side is finite and nonzero."""
    for m in range(start, start + limit):
        try:
            vals = [t.evaluate_symbolic({identity.main_var: m}) for t in identity.rhs]
        except PoleError:
            continue
        total = RatFunc(MultiPoly())
        for v in vals:
            total = total + v
        if not total.is_zero():
            return m
    raise PoleError("no usable base index for the right-hand side", {identity.main_var: start})


def find_counterexample(identity: Identity, n0: int, window: int = WINDOW) -> Optional[Dict[str, object]]:
    n = identity.main_var
    for m in range(n0, n0 + window):
        try:
            lhs = exact_sum_symbolic(identity.summand, identity.sum_vars, {n: m}, identity.ranges)
            rhs = RatFunc(MultiPoly())
            for t in identity.rhs:
                rhs = rhs + t.evaluate_symbolic({n: m})
        except (PoleError, NotHypergeometricError):
            continue
        if lhs != rhs:
            return {n: m, "sum": lhs.display(), "rhs": rhs.display()}
    return None


def certify_identity(identity: Identity, cert: Certificate, n0: Optional[int] = None) -> CertReport:
    """Run every check and combine them into a verdict."""
    n = identity.main_var
    if n0 is None:
        n0 = pick_base_index(identity)
    try:
        norm = divide_by_rhs(identity)
    except NotHypergeometricError as exc:
        cx = find_counterexample(identity, n0)
        report = CertReport("refuted" if cx else "inconclusive", False, False, cx is None,
                            base_index=n0, counterexample=cx, identity=identity, certificate=cert)
        report.notes.append(str(exc))
        return report
    f = norm.summand
    if len(cert.rs) != identity.r:
        raise CertificateFormatError(
            f"certificate has {len(cert.rs)} rational functions, identity has {identity.r} sums")

    residual = telescoping_residual(f, cert.rs, identity.sum_vars, cert.convention, n)
    convention = cert.convention
    notes: List[str] = []
    if not residual.is_zero():
        for c in CONVENTIONS:
            if c != cert.convention and telescoping_residual(f, cert.rs, identity.sum_vars, c, n).is_zero():
                notes.append(f"certificate fails under {cert.convention} but holds under {c}")
                convention = c
                residual = MultiPoly()
                break
    rational_ok = residual.is_zero()
    used = cert.with_convention(convention)

    if rational_ok:
        boundary_ok, evidence, base_ok, base_val, more = verify_support_and_base(
            f, used, n0, identity.sum_vars, n, identity.ranges)
        notes += more
    else:
        notes.append(f"telescoping relation fails under all conventions; residual {residual}")
        boundary_ok, evidence, base_ok, base_val = False, [], False, None
        try:
            base_val = exact_sum_symbolic(f, identity.sum_vars, {n: n0}, identity.ranges)
            base_ok = base_val == RatFunc(ONE)
        except (PoleError, NotHypergeometricError):
            pass

    cx = None
    if rational_ok and boundary_ok and base_ok:
        verdict = "proved"
    else:
        cx = find_counterexample(identity, n0)
        verdict = "refuted" if cx else "inconclusive"
    return CertReport(
        verdict=verdict,
        rational_identity_holds=rational_ok,
        boundary_ok=boundary_ok,
        base_case_ok=base_ok,
        base_case_value=base_val,
        base_index=n0,
        residual=residual,
        boundary_evidence=evidence,
        notes=notes + list(identity.remarks),
        counterexample=cx,
        convention=convention if rational_ok else None,
        identity=identity,
        certificate=used,
    )
