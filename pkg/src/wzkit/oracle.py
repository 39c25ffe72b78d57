"""Brute-force exact checks, independent of the certifier.

Only the algebra core and the term evaluator are used here, so agreement
between an oracle value and a certified identity is separate evidence.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import List, Mapping, Optional, Sequence, Tuple

from .errors import SupportError, TruncationError
from .hyperterm import HyperTerm, Identity, LinForm, support_box
from .poly import MultiPoly

# ---------------------------------------------------------------------------
# direct summation


def summation_box(f: HyperTerm, sum_vars: Sequence[str], point: Mapping[str, object],
                  ranges: Optional[Sequence[Optional[Tuple[LinForm, LinForm]]]] = None):
    """Finite integer bounds per summation variable at ``point``."""
    nat = support_box([f], sum_vars, point)
    ranges = ranges or (None,) * len(sum_vars)
    box = []
    for i, rg in enumerate(ranges):
        if rg is not None:
            box.append((int(rg[0].evaluate(point)), int(rg[1].evaluate(point))))
        elif nat is None:
            raise SupportError(f"no finite range for {sum_vars[i]}; give one explicitly")
        else:
            box.append(nat[i])
    return box


def exact_sum(f: HyperTerm, n: int, ranges=None, sum_vars: Sequence[str] = ("k",),
              params: Optional[Mapping[str, object]] = None, main_var: str = "n") -> Fraction:
    """``sum f(n, k...)`` by evaluating every term in the summation box."""
    point = {main_var: n, **(params or {})}
    box = summation_box(f, sum_vars, point, ranges)
    total = Fraction(0)
    for ks in itertools.product(*(range(lo, hi + 1) for lo, hi in box)):
        p = dict(point)
        p.update(zip(sum_vars, ks))
        total += f.evaluate(p)
    return total


def identity_values(identity: Identity, n: int, params: Optional[Mapping[str, object]] = None):
    """``(sum, rhs)`` of an identity at ``n``, both exact."""
    point = {identity.main_var: n, **(params or {})}
    lhs = exact_sum(identity.summand, n, identity.ranges, identity.sum_vars, params, identity.main_var)
    rhs = sum((t.evaluate(point) for t in identity.rhs), Fraction(0))
    return lhs, rhs


def check_identity(identity: Identity, ns: Sequence[int],
                   params: Optional[Mapping[str, object]] = None) -> List[Tuple[int, Fraction, Fraction]]:
    """The points ``(n, sum, rhs)`` among ``ns`` where the two sides differ."""
    bad = []
    for n in ns:
        lhs, rhs = identity_values(identity, n, params)
        if lhs != rhs:
            bad.append((n, lhs, rhs))
    return bad


# ---------------------------------------------------------------------------
# Apery numbers and the harmonic-sum identity


def harmonic(m: int) -> Fraction:
    """``H_m``; ``H_0 = 0``."""
    return sum((Fraction(1, i) for i in range(1, m + 1)), Fraction(0))


def apery(n: int) -> int:
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def ahlgren_ono_eval(n: int) -> Fraction:
    """``sum_{k=1}^n k C(n,k)^2 C(n+k,k)^2 (1/(2k) + H_{n+k} + H_{n-k} - 2 H_k)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    H = [Fraction(0)]
    for i in range(1, 2 * n + 1):
        H.append(H[-1] + Fraction(1, i))
    total = Fraction(0)
    for k in range(1, n + 1):
        w = comb(n, k) ** 2 * comb(n + k, k) ** 2
        total += k * w * (Fraction(1, 2 * k) + H[n + k] + H[n - k] - 2 * H[k])
    return total


# ---------------------------------------------------------------------------
# q-series


@dataclass(frozen=True)
class QSeries:
    """``sum coeffs[i] q^i`` known exactly up to and including ``q^order``."""

    coeffs: Tuple[int, ...]
    order: int

    def __post_init__(self):
        c = tuple(self.coeffs[: self.order + 1])
        c = c + (0,) * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], order: int) -> "QSeries":
        c = [0] * (order + 1)
        for e, v in terms.items():
            if 0 <= e <= order:
                c[e] += v
        return cls(tuple(c), order)

    def __getitem__(self, i: int) -> int:
        if i > self.order:
            raise TruncationError(f"coefficient of q^{i} requested, series known to q^{self.order}")
        return self.coeffs[i] if i >= 0 else 0

    def __mul__(self, other: "QSeries") -> "QSeries":
        order = min(self.order, other.order)
        out = [0] * (order + 1)
        b = other.coeffs
        for i, x in enumerate(self.coeffs[: order + 1]):
            if x:
                for j in range(order + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return QSeries(tuple(out), order)

    def square(self) -> "QSeries":
        return self * self

    def shift(self, by: int) -> "QSeries":
        """Multiply by ``q^by``."""
        return QSeries((0,) * by + self.coeffs, self.order + by)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if not mono:
                s = str(abs(c))
            else:
                s = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + s)
        if not parts:
            return f"O(q^{self.order + 1})"
        head = parts[0][2:] if parts[0].startswith("+") else "-" + parts[0][2:]
        return " ".join([head] + parts[1:]) + f" + O(q^{self.order + 1})"


def eta_product(order: int) -> QSeries:
    """``q prod_{m>=1} (1 - q^{2m})^4 (1 - q^{4m})^4`` up to ``q^order``."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order == 0:
        return QSeries((0,), 0)
    inner = order - 1
    acc = QSeries.from_terms({0: 1}, max(inner, 0))
    for step in (2, 4):
        m = 1
        while step * m <= inner:
            base = QSeries.from_terms({0: 1, step * m: -1}, inner)
            acc = acc * base.square().square()
            m += 1
    return acc.shift(1)


@dataclass(frozen=True)
class BeukersReport:
    p: int
    A_val: int
    a_val: int
    congruent: bool


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def beukers_check(p: int, N: int) -> BeukersReport:
    """Compare ``A((p-1)/2)`` with the ``q^p`` coefficient of the eta product mod ``p^2``."""
    if p % 2 == 0 or not _is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    if N < p:
        raise TruncationError(f"truncation order {N} is below p = {p}")
    A = apery((p - 1) // 2)
    a = eta_product(N)[p]
    return BeukersReport(p, A, a, (A - a) % (p * p) == 0)


# ---------------------------------------------------------------------------
# hand-proof demos


@dataclass(frozen=True)
class DescentStep:
    A: int
    B: int
    a: int
    b: int
    before: int
    after: int

    @property
    def invariant_ok(self) -> bool:
        return self.after == -self.before


def sqrt2_descent(A: int, B: int) -> DescentStep:
    """One descent step ``(a, b) = (2B - A, A - B)`` with ``a^2 - 2b^2 = -(A^2 - 2B^2)``."""
    if A < 1 or B < 1:
        raise ValueError("A and B must be positive")
    a, b = 2 * B - A, A - B
    return DescentStep(A, B, a, b, A * A - 2 * B * B, a * a - 2 * b * b)


def descent_chain(A: int, B: int, limit: int = 10_000) -> List[DescentStep]:
    """Iterate the descent while both entries stay positive.

    Each step strictly decreases ``A``, so the chain is finite; a solution of
    ``A^2 = 2B^2`` would give an infinite decreasing chain of positive pairs.
    """
    steps = []
    while A >= 1 and B >= 1 and len(steps) < limit:
        s = sqrt2_descent(A, B)
        steps.append(s)
        A, B = s.a, s.b
    return steps


def sqrt2_invariant_symbolic() -> bool:
    """``a^2 - 2b^2 + (A^2 - 2B^2)`` is the zero polynomial for ``a = 2B - A, b = A - B``."""
    A, B = MultiPoly.var("A"), MultiPoly.var("B")
    a, b = 2 * B - A, A - B
    return (a * a - 2 * b * b + (A * A - 2 * B * B)).is_zero()


def _xs(n: int) -> List[MultiPoly]:
    return [MultiPoly.var(f"x{i}") for i in range(1, n + 1)]


def parable_check(n: int) -> bool:
    """``e1^2 = p2 + 2 e2`` in ``x1..xn``, plus the induction step on ``e1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    xs = _xs(n)
    zero = MultiPoly()
    e1 = sum(xs, zero)
    p2 = sum((x * x for x in xs), zero)
    e2 = sum((xs[i] * xs[j] for i in range(n) for j in range(i + 1, n)), zero)
    ok = e1 * e1 == p2 + 2 * e2
    prev = sum(xs[:-1], zero)
    step = prev * prev + 2 * prev * xs[-1] + xs[-1] * xs[-1]
    return ok and e1 * e1 == step
