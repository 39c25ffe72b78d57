"""Telescoping with several summation variables, and Laurent constant terms.

For ``F(n, k_1..k_r)`` with ``sum F = 1`` a certificate is a list of rational
functions ``R_i`` such that, with ``G_i = R_i F``,

    F(n+1, k) - F(n, k) = sum_i (G_i(.., k_i + 1, ..) - G_i(.., k_i, ..)).

Finding the ``R_i`` is done by a linear ansatz: each ``R_i`` is an unknown
polynomial over a denominator built from the shift structure of ``F``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .certifier import Certificate, telescoping_residual
from .errors import BudgetExceededError
from .hyperterm import HyperTerm
from .linalg import solve, solve_guided
from .poly import ONE, ZERO, MultiPoly, RatFunc

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class MultiCert(Certificate):
    """Certificates ``R_1..R_r``, one per summation variable."""


def verify_multi(f: HyperTerm, cert: Certificate, sum_vars: Sequence[str],
                 n: str = "n") -> Tuple[bool, MultiPoly]:
    """Symbolic check of the multi-variable telescoping relation."""
    res = telescoping_residual(f, cert.rs, sum_vars, cert.convention, n)
    return res.is_zero(), res


# ---------------------------------------------------------------------------
# ansatz


def _split_by(p: MultiPoly, main: Sequence[str]) -> Dict[Tuple[int, ...], MultiPoly]:
    """Coefficients of ``p`` as a polynomial in ``main`` over the other variables."""
    idx = [p.vars.index(v) if v in p.vars else None for v in main]
    rest = [v for v in p.vars if v not in main]
    ridx = [p.vars.index(v) for v in rest]
    out: Dict[Tuple[int, ...], Dict] = {}
    for e, c in p.terms.items():
        key = tuple(e[i] if i is not None else 0 for i in idx)
        out.setdefault(key, {})[tuple(e[i] for i in ridx)] = c
    return {key: MultiPoly(rest, terms) for key, terms in out.items()}


def _monomials(vars: Sequence[str], degree: int) -> List[MultiPoly]:
    out = []
    for d in range(degree + 1):
        for combo in itertools.combinations_with_replacement(vars, d):
            m = ONE
            for v in combo:
                m = m * MultiPoly.var(v)
            out.append(m)
    return out


def denominator_pool(f: HyperTerm, sum_vars: Sequence[str], n: str = "n") -> List[MultiPoly]:
    """Distinct linear factors of the shift-quotient denominators of ``f``
    that involve ``n`` or a summation variable; ``n``-quotient factors first."""
    main = set(sum_vars) | {n}
    pool: List[MultiPoly] = []
    for v in [n, *sum_vars]:
        _, _, den = f.shift_quotient_factors(v)
        for fac in den:
            fac = fac.primitive()
            if set(fac.vars) & main and fac not in pool:
                pool.append(fac)
    return pool


def denominator_candidates(pool: Sequence[MultiPoly], max_mult: int = 2) -> List[List[MultiPoly]]:
    """Factor lists drawn from the pool with multiplicity at most ``max_mult``,
    ordered by total degree and then by pool order."""
    cands = []
    for mults in itertools.product(range(max_mult + 1), repeat=len(pool)):
        d = [fac for fac, m in zip(pool, mults) for _ in range(m)]
        cands.append((sum(mults), tuple(-m for m in mults), d))
    cands.sort(key=lambda c: (c[0], c[1]))
    return [c[2] for c in cands]


def _primitive_factor(p: MultiPoly) -> Tuple[Fraction, MultiPoly]:
    q = p.primitive()
    return p.leading_coefficient() / q.leading_coefficient(), q


def _factor_counter(factors: Sequence[MultiPoly]) -> Tuple[Fraction, Counter]:
    const = Fraction(1)
    out: Counter = Counter()
    for fac in factors:
        c, q = _primitive_factor(fac)
        const *= c
        if not q.is_constant():
            out[q] += 1
    return const, out


def _product(c: Counter) -> MultiPoly:
    out = ONE
    for fac, m in sorted(c.items(), key=lambda kv: str(kv[0])):
        out = out * fac ** m
    return out


def _solve_ansatz(f: HyperTerm, sum_vars: Sequence[str], n: str, D_factors: Sequence[MultiPoly],
                  degree: int) -> Optional[List[RatFunc]]:
    """Solve for ``P_i`` in the relation with every ``R_i = P_i / D``.

    All denominators are products of known linear factors, so a common
    multiple ``Q`` is assembled from factor multisets instead of gcds.
    """
    main = [n, *sum_vars]
    cn, num_n, den_n = f.shift_quotient_factors(n)
    c1, num_c = _factor_counter(num_n)
    c2, den_c = _factor_counter(den_n)
    cn = cn * c1 / c2
    _, D_c = _factor_counter(D_factors)
    pieces = []
    Q = Counter(den_c) | D_c
    for k in sum_vars:
        ck, num_k, den_k = f.shift_quotient_factors(k)
        a1, nk = _factor_counter(num_k)
        a2, dk = _factor_counter(den_k)
        _, Dk = _factor_counter([fac.shift(k, 1) for fac in D_factors])
        denom = dk + Dk
        Q = Q | denom
        pieces.append((ck * a1 / a2, nk, denom))
    D = _product(D_c)
    target = _product(Q - den_c) * (_product(num_c).scale(cn) - _product(den_c))
    monos = _monomials(main, degree)
    columns = []
    for (ck, nk, denom), k in zip(pieces, sum_vars):
        a = _product(Q - denom) * _product(nk).scale(ck)
        b = _product(Q - D_c)
        for m in monos:
            columns.append(m.shift(k, 1) * a - m * b)
    split_cols = [_split_by(c, main) for c in columns]
    split_rhs = _split_by(target, main)
    keys = set(split_rhs)
    for sc in split_cols:
        keys.update(sc)
    keys = sorted(keys)
    rows = [[sc.get(key, ZERO) for sc in split_cols] for key in keys]
    rhs = [split_rhs.get(key, ZERO) for key in keys]
    params = sorted({v for r in rows for x in r for v in x.vars} | {v for x in rhs for v in x.vars})
    point = {v: 1009 + 37 * i for i, v in enumerate(params)}
    sol = solve_guided(rows, rhs, point)
    if sol is None:
        return None
    rs = _assemble(sol, monos, sum_vars, D)
    if not telescoping_residual(f, rs, sum_vars, "forward", n).is_zero():
        sol = solve(rows, rhs)
        if sol is None:
            return None
        rs = _assemble(sol, monos, sum_vars, D)
    return rs


def _assemble(sol, monos, sum_vars, D) -> List[RatFunc]:
    out = []
    per = len(monos)
    for i in range(len(sum_vars)):
        num = RatFunc(ZERO)
        for u, m in zip(sol[i * per:(i + 1) * per], monos):
            if not u.is_zero():
                num = num + u * RatFunc(m)
        out.append(num / RatFunc(D))
    return out


def find_multi_ansatz(f: HyperTerm, degree_bound: int, sum_vars: Sequence[str] = ("k1", "k2"),
                      n: str = "n") -> Optional[MultiCert]:
    """Search for certificates ``R_i = P_i / D`` with ``deg P_i <= degree_bound``.

    Degrees are tried in increasing order, and for each degree every
    candidate denominator from :func:`denominator_candidates`.  A returned
    certificate has passed :func:`verify_multi`.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    cands = denominator_candidates(denominator_pool(f, sum_vars, n))
    for degree in range(degree_bound + 1):
        for D in cands:
            rs = _solve_ansatz(f, sum_vars, n, D, degree)
            if rs is None:
                continue
            cert = MultiCert(tuple(rs))
            ok, res = verify_multi(f, cert, sum_vars, n)
            if not ok:
                raise AssertionError(f"ansatz self-check failed, residual {res}")
            return cert
    return None


# ---------------------------------------------------------------------------
# constant terms


class LaurentPoly:
    """Laurent polynomial in ``z_1..z_r``: exponent tuple -> nonzero Fraction."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[Tuple[int, ...], Fraction]] = None):
        self.nvars = nvars
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c}
        for e in self.terms:
            if len(e) != nvars:
                raise ValueError(f"exponent {e} does not have {nvars} entries")

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: Fraction(1)})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[Tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.nvars, out)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars and self.terms == other.terms

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def max_abs_exponent(self) -> int:
        return max((abs(x) for e in self.terms for x in e), default=0)

    def permuted(self, perm: Sequence[int]) -> "LaurentPoly":
        """Rename ``z_i`` to ``z_perm[i]``."""
        out = {}
        for e, c in self.terms.items():
            new = [0] * self.nvars
            for i, x in enumerate(e):
                new[perm[i]] = x
            out[tuple(new)] = c
        return LaurentPoly(self.nvars, out)

    def __str__(self):
        parts = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"z{i + 1}^{x}" if x != 1 else f"z{i + 1}" for i, x in enumerate(e) if x)
            c = self.terms[e]
            parts.append(f"{c}" if not mono else (mono if c == 1 else f"{c}*{mono}"))
        return " + ".join(parts) if parts else "0"


def _one_minus_ratio_power(r: int, i: int, j: int, a: int) -> LaurentPoly:
    """``(1 - z_i/z_j)^a`` by the binomial theorem."""
    out = {}
    for m in range(a + 1):
        e = [0] * r
        e[i] += m
        e[j] -= m
        out[tuple(e)] = Fraction((-1) ** m * comb(a, m))
    return LaurentPoly(r, out)


def dyson_product(r: int, a: int) -> LaurentPoly:
    """``prod_{i != j} (1 - z_i/z_j)^a`` expanded exactly."""
    p = LaurentPoly.one(r)
    for i in range(r):
        for j in range(r):
            if i != j:
                p = p * _one_minus_ratio_power(r, i, j, a)
    bound = r * a
    if p.max_abs_exponent() > bound:
        raise AssertionError("Laurent expansion left its exponent box")
    return p


def constant_term(r: int, a: int, budget: int = DEFAULT_BUDGET) -> Fraction:
    """Constant term of ``prod_{i != j} (1 - z_i/z_j)^a``."""
    if r < 1 or a < 0:
        raise ValueError("need r >= 1 and a >= 0")
    needed = (2 * a + 1) ** r * r * r
    if needed > budget:
        raise BudgetExceededError(
            f"constant term for r={r}, a={a} needs about {needed} multiplications "
            f"((2a+1)^r * r^2), budget is {budget}", needed, budget)
    return dyson_product(r, a).constant_term()
