"""Gosper's algorithm and Zeilberger's creative telescoping.

Everything here runs over ``Q(params)[k]`` where ``k`` is the summation
variable and the remaining variables (``n``, named parameters) stay symbolic.
The single workhorse is :func:`parametrized_gosper`, which decides whether a
linear combination ``sum_j c_j * M_j(k) * F(k)`` with unknown constants
``c_j`` has a hypergeometric antidifference of the form ``R(k) * F(k)``:

* plain Gosper: one multiplier ``M_0 = 1``;
* WZ certificates: ``M_0 = F(n+1,k)/F(n,k) - 1``;
* Zeilberger: ``M_j = F(n+j,k)/F(n,k)`` for ``j = 0..J``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .certifier import Certificate, verify_recurrence, verify_wz_rational
from .errors import NoWZPairError, NotHypergeometricError, RecurrenceNotFoundError
from .hyperterm import HyperTerm
from .linalg import nullspace
from .poly import ONE, ZERO, MultiPoly, RatFunc, poly_gcd, poly_lcm

_SPECIAL_VALUES = (37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83)
_PRIMES = (2**61 - 1, 2**31 - 1, 1_000_000_007)


# ---------------------------------------------------------------------------
# univariate helpers (dense coefficient lists, constant term first)


def _dense(p: MultiPoly, k: str) -> List[Fraction]:
    d = p.degree(k)
    out = [Fraction(0)] * (d + 1)
    for deg, c in p.coeffs_in(k).items():
        out[deg] = c.constant_value()
    return out


def _int_root_ceil(q: Fraction, m: int) -> int:
    """Smallest integer ``r >= 0`` with ``r**m >= q``."""
    if q <= 0:
        return 0
    lo, hi = 0, 1
    while Fraction(hi) ** m < q:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if Fraction(mid) ** m >= q:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _root_bound(coeffs: Sequence[Fraction]) -> int:
    """Fujiwara bound on the absolute value of complex roots."""
    d = len(coeffs) - 1
    lc = coeffs[d]
    best = 0
    for i in range(d):
        if coeffs[i]:
            best = max(best, _int_root_ceil(abs(coeffs[i] / lc), d - i))
    return 2 * best + 1


def _mod_poly(coeffs: Sequence[Fraction], p: int) -> List[int]:
    return [(c.numerator * pow(c.denominator, -1, p)) % p for c in coeffs]


def _trim_mod(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _gcd_degree_mod(a: List[int], b: List[int], p: int) -> int:
    a, b = _trim_mod(list(a)), _trim_mod(list(b))
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            off = len(a) - len(b)
            for i, c in enumerate(b):
                a[off + i] = (a[off + i] - f * c) % p
            _trim_mod(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def _shift_one_mod(a: List[int], p: int) -> List[int]:
    """Coefficients of a(k+1) modulo p (Horner-style Taylor shift)."""
    out = list(a)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = (out[j] + out[j + 1]) % p
    return out


def dispersion_set(a: MultiPoly, b: MultiPoly, k: str) -> List[int]:
    """All ``h >= 0`` with ``gcd(a(k), b(k+h))`` of positive degree in ``k``.

    Candidates come from a specialization of the other variables checked
    modulo a prime; each is then confirmed by an exact multivariate gcd.
    """
    if a.degree(k) < 1 or b.degree(k) < 1:
        return []
    params = sorted((set(a.vars) | set(b.vars)) - {k})
    da, db = a.degree(k), b.degree(k)
    spec_a = spec_b = None
    for attempt in range(len(_SPECIAL_VALUES)):
        vals = {v: _SPECIAL_VALUES[(i + attempt) % len(_SPECIAL_VALUES)] for i, v in enumerate(params)}
        sa, sb = a.partial_evaluate(vals), b.partial_evaluate(vals)
        if sa.degree(k) == da and sb.degree(k) == db:
            spec_a, spec_b = _dense(sa, k), _dense(sb, k)
            break
    if spec_a is None:
        raise NotHypergeometricError("could not find a non-degenerate specialization")
    bound = _root_bound(spec_a) + _root_bound(spec_b)
    for p in _PRIMES:
        if all(c.denominator % p for c in spec_a + spec_b) and \
                spec_a[-1].numerator % p and spec_b[-1].numerator % p:
            break
    A = _mod_poly(spec_a, p)
    B = _mod_poly(spec_b, p)
    cands = []
    for h in range(bound + 1):
        if _gcd_degree_mod(A, B, p) >= 1:
            cands.append(h)
        B = _shift_one_mod(B, p)
    out = []
    for h in cands:
        if poly_gcd(a, b.shift(k, h)).degree(k) >= 1:
            out.append(h)
    return out


# ---------------------------------------------------------------------------
# Gosper form and degree bound


def gosper_form(ratio: RatFunc, k: str) -> Tuple[MultiPoly, MultiPoly, MultiPoly]:
    """Split ``ratio = a(k)/b(k) * c(k+1)/c(k)`` with ``gcd(a(k), b(k+h)) = 1``
    for every ``h >= 0``."""
    a, b, c = ratio.num, ratio.den, ONE
    while True:
        hs = dispersion_set(a, b, k)
        if not hs:
            return a, b, c
        for h in hs:
            g = poly_gcd(a, b.shift(k, h))
            if g.degree(k) < 1:
                continue
            a = a.exact_div(g)
            b = b.exact_div(g.shift(k, -h))
            for i in range(1, h + 1):
                c = c * g.shift(k, -i)


def _coeff(p: MultiPoly, k: str, d: int) -> MultiPoly:
    return p.coeffs_in(k).get(d, ZERO)


def degree_bound(a: MultiPoly, b_prev: MultiPoly, rhs_degree: int, k: str) -> int:
    """Upper bound for ``deg x`` in ``a(k) x(k+1) - b(k-1) x(k) = rhs(k)``.

    ``b_prev`` is ``b(k-1)``.  Both candidates are taken when the leading
    terms cancel.
    """
    s = a + b_prev
    d = a - b_prev
    ls = s.degree(k)
    ld = d.degree(k) if not d.is_zero() else -1
    if ls <= ld:
        return rhs_degree - ld
    lam = _coeff(s, k, ls)
    lam1 = _coeff(d, k, ls - 1)
    cands = [rhs_degree - ls + 1]
    q = RatFunc(-2 * lam1, lam)
    if q.is_constant():
        v = q.constant_value()
        if v.denominator == 1 and v >= 0:
            cands.append(int(v))
    return max(cands)


# ---------------------------------------------------------------------------
# the parametrized solver


@dataclass(frozen=True)
class GosperSolution:
    coefficients: Tuple[MultiPoly, ...]
    certificate: RatFunc


def _complexity(r: RatFunc):
    return (r.num.degree(), r.den.degree(), len(str(r)), str(r))


def _rational_gcd(xs: Sequence[Fraction]) -> Fraction:
    from math import gcd, lcm

    num = den = 0
    for x in xs:
        num = gcd(num, x.numerator)
        den = lcm(den, x.denominator) if den else x.denominator
    return Fraction(num, den or 1)


def parametrized_gosper(ratio_k: RatFunc, multipliers: Sequence[RatFunc], k: str) -> Optional[GosperSolution]:
    """Find constants ``c_j`` (polynomials in the parameters, not all zero)
    and ``R`` with ``sum_j c_j M_j = R(k+1) * ratio_k - R(k)``.

    Equivalently ``G = R F`` satisfies ``G(k+1) - G(k) = sum_j c_j M_j F`` for
    any term ``F`` with ``F(k+1)/F(k) = ratio_k``.
    """
    mults = [RatFunc.coerce(m) for m in multipliers]
    L = ONE
    for m in mults:
        L = poly_lcm(L, m.den)
    P = [m.num * L.exact_div(m.den) for m in mults]
    bar_ratio = ratio_k * RatFunc(L, L.shift(k, 1))
    a, b, c = gosper_form(bar_ratio, k)
    b_prev = b.shift(k, -1)
    rhs_deg = c.degree(k) + max(p.degree(k) for p in P)
    D = degree_bound(a, b_prev, rhs_deg, k)
    J = len(P)
    columns: List[MultiPoly] = [-(c * p) for p in P]
    kk = MultiPoly.var(k)
    for d in range(max(D, -1) + 1):
        columns.append(a * (kk + 1) ** d - b_prev * kk ** d)
    degs = set()
    col_coeffs = []
    for col in columns:
        cs = col.coeffs_in(k)
        col_coeffs.append(cs)
        degs.update(cs)
    rows = [[cs.get(deg, ZERO) for cs in col_coeffs] for deg in sorted(degs)]
    if not rows:
        rows = [[ZERO] * len(columns)]
    basis = nullspace(rows, len(columns))
    with_c = [v for v in basis if any(not x.is_zero() for x in v[:J])]
    if not with_c:
        return None
    homog = [v for v in basis if all(x.is_zero() for x in v[:J])]
    cands = list(with_c)
    for v in with_c:
        for w in homog:
            for i in range(J, len(columns)):
                if not w[i].is_zero() and not v[i].is_zero():
                    cands.append([w[i] * x - v[i] * y for x, y in zip(v, w)])

    def certificate(v):
        x = ZERO
        for d in range(len(columns) - J):
            x = x + v[J + d] * kk ** d
        if x.is_zero():
            return RatFunc(ZERO)
        return RatFunc(b_prev * x, c * L)

    best = None
    for v in cands:
        cs = v[:J]
        R = certificate(v)
        # scale so the coefficient vector is primitive
        g = ZERO
        for x in cs:
            if not x.is_zero():
                g = x if g.is_zero() else poly_gcd(g, x)
        nums = [x.exact_div(g) for x in cs]
        content = _rational_gcd([x.content() for x in nums if not x.is_zero()])
        lead = next(x for x in reversed(nums) if not x.is_zero())
        if lead.leading_coefficient() < 0:
            content = -content
        cs = tuple(x.scale(1 / content) for x in nums)
        R = R / RatFunc(g.scale(content))
        key = _complexity(R)
        if best is None or key < best[0]:
            best = (key, cs, R)
    _, cs, R = best
    return GosperSolution(cs, R)


# ---------------------------------------------------------------------------
# public finders


def gosper(t: HyperTerm, k: str = "k") -> Optional[RatFunc]:
    """Hypergeometric antidifference: ``R`` with ``G = R t`` and
    ``G(k+1) - G(k) = t(k)``, or ``None`` when none exists."""
    ratio = t.shift_quotient(k)
    sol = parametrized_gosper(ratio, [RatFunc(ONE)], k)
    if sol is None:
        return None
    c0 = sol.coefficients[0]
    R = sol.certificate / RatFunc(c0)
    check = R.shift(k, 1) * ratio - R
    if check != RatFunc(ONE):
        raise AssertionError("Gosper self-check failed")
    return R


@dataclass(frozen=True)
class Recurrence:
    """``sum_j coefficients[j](n) * a(n+j) = 0`` witnessed by ``certificate``."""

    order: int
    coefficients: Tuple[MultiPoly, ...]
    certificate: RatFunc
    main_var: str = "n"

    def apply(self, values: Sequence[Fraction], n0: int = 0) -> List[Fraction]:
        """Residuals ``sum_j c_j(n) a(n+j)`` for every window of ``values`` (a(n0), a(n0+1), ...)."""
        out = []
        for i in range(len(values) - self.order):
            n = n0 + i
            out.append(sum(
                (c.evaluate({self.main_var: n}) if c.vars else c.constant_value()) * values[i + j]
                for j, c in enumerate(self.coefficients)
            ))
        return out

    def __str__(self):
        out = ""
        for j, c in enumerate(self.coefficients):
            if c.is_zero():
                continue
            arg = self.main_var if j == 0 else f"{self.main_var} + {j}"
            neg = c.leading_coefficient() < 0
            body = -c if neg else c
            if body.is_constant():
                term = f"a({arg})" if body.constant_value() == 1 else f"{body}*a({arg})"
            else:
                term = f"({body})*a({arg})"
            if not out:
                out = ("-" if neg else "") + term
            else:
                out += (" - " if neg else " + ") + term
        return out + " = 0"


def _shift_products(r_n: RatFunc, n: str, order: int) -> List[RatFunc]:
    out = [RatFunc(ONE)]
    for j in range(order):
        out.append(out[-1] * r_n.shift(n, j))
    return out


def zeilberger(f: HyperTerm, max_order: int = 6, n: str = "n", k: str = "k") -> Recurrence:
    """Minimal-order recurrence in ``n`` for ``sum_k f(n, k)``."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    r_k = f.shift_quotient(k)
    r_n = f.shift_quotient(n)
    for J in range(1, max_order + 1):
        mults = _shift_products(r_n, n, J)
        sol = parametrized_gosper(r_k, mults, k)
        if sol is None:
            continue
        rec = Recurrence(J, sol.coefficients, sol.certificate, n)
        ok, _ = verify_recurrence(f, rec.coefficients, rec.certificate, n, k)
        if not ok:
            raise AssertionError("Zeilberger self-check failed")
        return rec
    raise RecurrenceNotFoundError(f"no recurrence of order <= {max_order}", max_order)


def wz_certificate_find(f: HyperTerm, n: str = "n", k: str = "k") -> Certificate:
    """WZ certificate for a normalized summand (``sum_k f = 1``)."""
    r_n = f.shift_quotient(n)
    r_k = f.shift_quotient(k)
    sol = parametrized_gosper(r_k, [r_n - 1], k)
    if sol is None:
        raise NoWZPairError(
            "no WZ mate exists; the sum is not constant in "
            f"{n} or needs a higher-order recurrence (try zeilberger)"
        )
    R = sol.certificate / RatFunc(sol.coefficients[0])
    cert = Certificate((R,), "forward")
    ok, residual = verify_wz_rational(f, cert, n, k)
    if not ok:
        raise AssertionError(f"WZ self-check failed, residual {residual}")
    return cert
