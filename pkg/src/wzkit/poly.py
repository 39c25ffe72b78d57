"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`MultiPoly` is immutable.  Its variable tuple is always the sorted
set of variables that actually occur, so two equal polynomials have identical
``vars`` and ``terms`` regardless of how they were built.  Monomials are
compared in graded-lexicographic order with variables ranked by name.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, gcd, lcm
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from .errors import DivisionByZeroError, NotDivisibleError, PoleError

Exp = Tuple[int, ...]
Scalar = Union[int, Fraction]


def _frac(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class MultiPoly:
    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str] = (), terms: Mapping[Exp, Scalar] | None = None):
        vars = tuple(vars)
        clean: Dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != len(vars):
                    raise ValueError("exponent vector length does not match variables")
                c = _frac(c)
                if c:
                    clean[tuple(e)] = clean.get(tuple(e), Fraction(0)) + c
        clean = {e: c for e, c in clean.items() if c}
        if list(vars) != sorted(set(vars)):
            order = tuple(sorted(set(vars)))
            merged: Dict[Exp, Fraction] = {}
            for e, c in clean.items():
                ne = tuple(sum(k for w, k in zip(vars, e) if w == v) for v in order)
                merged[ne] = merged.get(ne, Fraction(0)) + c
            vars = order
            clean = {e: c for e, c in merged.items() if c}
        self.vars, self.terms = _trim(vars, clean)
        self._hash = None

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Exp, Fraction]) -> "MultiPoly":
        # terms already free of zeros, vars sorted
        p = object.__new__(cls)
        p.vars, p.terms = _trim(vars, terms)
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        c = _frac(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        if not name.isidentifier():
            raise ValueError(f"not a variable name: {name!r}")
        return cls._raw((name,), {(1,): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "MultiPoly":
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, str):
            return cls.var(x)
        return cls.const(x)

    @classmethod
    def from_coeffs(cls, var: str, coeffs: Mapping[int, "MultiPoly"]) -> "MultiPoly":
        v = cls.var(var)
        out = ZERO
        for d, c in coeffs.items():
            out = out + c * v ** d
        return out

    # -- basic predicates ---------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.vars

    def constant_value(self) -> Fraction:
        if self.vars:
            raise ValueError(f"{self} is not constant")
        return self.terms.get((), Fraction(0))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            if isinstance(other, (int, Fraction)):
                other = MultiPoly.const(other)
            else:
                return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic -----------------------------------------------------
    def _aligned(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vs = tuple(sorted(set(self.vars) | set(other.vars)))
        return vs, _remap(self, vs), _remap(other, vs)

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        vs, a, b = self._aligned(other)
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return MultiPoly._raw(self.vars, {e: c * other for e, c in self.terms.items()})
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return ZERO
        vs, a, b = self._aligned(other)
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(vs, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be non-negative integers")
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: Scalar) -> "MultiPoly":
        return self * _frac(c)

    # -- structure --------------------------------------------------------
    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in ``var``.  The zero polynomial has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def coeffs_in(self, var: str) -> Dict[int, "MultiPoly"]:
        """View as a polynomial in ``var``: map degree -> coefficient polynomial."""
        if var not in self.vars:
            return {0: self} if self.terms else {}
        i = self.vars.index(var)
        rest = self.vars[:i] + self.vars[i + 1:]
        buckets: Dict[int, Dict[Exp, Fraction]] = {}
        for e, c in self.terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        return {d: MultiPoly._raw(rest, t) for d, t in buckets.items()}

    def lc_in(self, var: str) -> "MultiPoly":
        cs = self.coeffs_in(var)
        return cs[max(cs)] if cs else ZERO

    def leading_term(self) -> Tuple[Exp, Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=lambda x: (sum(x), x))
        return e, self.terms[e]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        g = 0
        d = 1
        for c in self.terms.values():
            g = gcd(g, c.numerator)
            d = lcm(d, c.denominator)
        return Fraction(g, d)

    def primitive(self) -> "MultiPoly":
        """Integer-coefficient primitive associate with positive leading coefficient."""
        if not self.terms:
            return self
        c = self.content()
        if self.leading_coefficient() < 0:
            c = -c
        return self * (1 / c)

    def monomials(self):
        return sorted(self.terms, key=lambda x: (sum(x), x), reverse=True)

    # -- substitution and evaluation -----------------------------------------
    def subs(self, mapping: Mapping[str, object]) -> "MultiPoly":
        """Substitute polynomials or rationals for variables (simultaneously)."""
        relevant = {v: MultiPoly.coerce(x) for v, x in mapping.items() if v in self.vars}
        if not relevant:
            return self
        keep = [i for i, v in enumerate(self.vars) if v not in relevant]
        keep_vars = tuple(self.vars[i] for i in keep)
        sub_idx = [(i, relevant[v]) for i, v in enumerate(self.vars) if v in relevant]
        cache: Dict[Tuple[int, int], MultiPoly] = {}

        def power(i, base, k):
            key = (i, k)
            if key not in cache:
                cache[key] = base ** k
            return cache[key]

        out = ZERO
        groups: Dict[Exp, Dict[Exp, Fraction]] = {}
        for e, c in self.terms.items():
            sub_e = tuple(e[i] for i, _ in sub_idx)
            keep_e = tuple(e[i] for i in keep)
            groups.setdefault(sub_e, {})[keep_e] = c
        for sub_e, rest in groups.items():
            factor = MultiPoly._raw(keep_vars, rest)
            for (i, base), k in zip(sub_idx, sub_e):
                if k:
                    factor = factor * power(i, base, k)
            out = out + factor
        return out

    def shift(self, var: str, by: int | Fraction) -> "MultiPoly":
        """Return ``self`` with ``var`` replaced by ``var + by``."""
        if not by or var not in self.vars:
            return self
        i = self.vars.index(var)
        by = _frac(by)
        out: Dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            d = e[i]
            for j in range(d + 1):
                ne = e[:i] + (j,) + e[i + 1:]
                out[ne] = out.get(ne, 0) + c * comb(d, j) * by ** (d - j)
        return MultiPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        missing = [v for v in self.vars if v not in point]
        if missing:
            raise KeyError(f"no value for {', '.join(missing)}")
        vals = [_frac(point[v]) for v in self.vars]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def partial_evaluate(self, point: Mapping[str, Scalar]) -> "MultiPoly":
        return self.subs({v: _frac(x) for v, x in point.items()})

    # -- division -----------------------------------------------------------
    def exact_div(self, other: "MultiPoly | Scalar") -> "MultiPoly":
        """Exact quotient; raises :class:`NotDivisibleError` on a remainder."""
        if isinstance(other, (int, Fraction)):
            if not other:
                raise DivisionByZeroError("division by zero")
            return self * (1 / _frac(other))
        if not other.terms:
            raise DivisionByZeroError("division by the zero polynomial")
        if not self.terms:
            return ZERO
        if other.is_constant():
            return self * (1 / other.constant_value())
        if not set(other.vars) <= set(self.vars):
            raise NotDivisibleError(f"{other} does not divide {self}")
        vs = self.vars
        b = _remap(other, vs)
        lb = max(b, key=lambda x: (sum(x), x))
        cb = b[lb]
        rem = dict(self.terms)
        quo: Dict[Exp, Fraction] = {}
        while rem:
            lr = max(rem, key=lambda x: (sum(x), x))
            diff = tuple(x - y for x, y in zip(lr, lb))
            if min(diff) < 0:
                raise NotDivisibleError(f"{other} does not divide {self}")
            q = rem[lr] / cb
            quo[diff] = quo.get(diff, 0) + q
            for e, c in b.items():
                ne = tuple(x + y for x, y in zip(e, diff))
                s = rem.get(ne, 0) - q * c
                if s:
                    rem[ne] = s
                else:
                    rem.pop(ne, None)
        return MultiPoly._raw(vs, {e: c for e, c in quo.items() if c})

    def divides(self, other: "MultiPoly") -> bool:
        try:
            other.exact_div(self)
        except NotDivisibleError:
            return False
        return True

    # -- display ------------------------------------------------------------
    def __str__(self):
        return self.format()

    def _ordered_monomials(self, order: Sequence[str]):
        rank = [self.vars.index(v) for v in order if v in self.vars]
        rank += [i for i in range(len(self.vars)) if i not in rank]
        return sorted(self.terms, key=lambda e: (-sum(e), tuple(-e[i] for i in rank)))

    def format(self, order: Sequence[str] = ()) -> str:
        """Text form; ``order`` lists variables whose powers should lead."""
        if not self.terms:
            return "0"
        parts = []
        for e in (self._ordered_monomials(order) if order else self.monomials()):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            mag = abs(c)
            if not mono:
                body = _fmt_frac(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_frac(mag)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MultiPoly({str(self)!r})"

    def to_record(self):
        """JSON-friendly list of ``[exponents..., "p/q"]`` rows plus variable names."""
        return {
            "vars": list(self.vars),
            "terms": [list(e) + [str(self.terms[e])] for e in self.monomials()],
        }

    @classmethod
    def from_record(cls, rec) -> "MultiPoly":
        vars = tuple(rec["vars"])
        terms = {}
        for row in rec["terms"]:
            *e, c = row
            terms[tuple(int(x) for x in e)] = Fraction(c)
        return cls(vars, terms)


def _fmt_frac(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"({c.numerator}/{c.denominator})"


def _trim(vars: Tuple[str, ...], terms: Dict[Exp, Fraction]):
    if not vars:
        return vars, terms
    used = [i for i in range(len(vars)) if any(e[i] for e in terms)]
    if len(used) == len(vars):
        return vars, terms
    nv = tuple(vars[i] for i in used)
    return nv, {tuple(e[i] for i in used): c for e, c in terms.items()}


def _remap(p: MultiPoly, vs: Tuple[str, ...]) -> Dict[Exp, Fraction]:
    if p.vars == vs:
        return p.terms
    pos = [vs.index(v) for v in p.vars]
    n = len(vs)
    out = {}
    for e, c in p.terms.items():
        ne = [0] * n
        for j, k in zip(pos, e):
            ne[j] = k
        out[tuple(ne)] = c
    return out


def _coerce_or_none(x):
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return MultiPoly.const(x)
    return None


ZERO = MultiPoly._raw((), {})
ONE = MultiPoly._raw((), {(): Fraction(1)})


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


# ---------------------------------------------------------------------------
# gcd


def poly_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Canonical gcd: integer primitive with positive leading coefficient."""
    if a.is_zero() and b.is_zero():
        raise DivisionByZeroError("gcd(0, 0) is undefined")
    return _gcd(a, b).primitive()


def _gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.is_constant() or b.is_constant():
        return ONE
    if a == b:
        return a
    va, vb = set(a.vars), set(b.vars)
    only_a = sorted(va - vb)
    if only_a:
        return _gcd(_content_in(a, only_a[-1]), b)
    only_b = sorted(vb - va)
    if only_b:
        return _gcd(a, _content_in(b, only_b[-1]))
    # both share all variables; recurse on the last one
    v = a.vars[-1]
    ca, cb = _content_in(a, v), _content_in(b, v)
    pa, pb = a.exact_div(ca), b.exact_div(cb)
    c = _gcd(ca, cb)
    g = _prs_gcd(pa, pb, v)
    return c * g


def _content_in(p: MultiPoly, v: str) -> MultiPoly:
    coeffs = sorted(p.coeffs_in(v).values(), key=lambda q: (len(q.terms), q.degree()))
    g = ZERO
    for q in coeffs:
        g = _gcd(g, q)
        if g.is_constant():
            return ONE
    return g.primitive()


def _prem(a: MultiPoly, b: MultiPoly, v: str) -> MultiPoly:
    db = b.degree(v)
    lb = b.lc_in(v)
    x = MultiPoly.var(v)
    r = a
    while not r.is_zero() and r.degree(v) >= db:
        dr = r.degree(v)
        r = r * lb - r.lc_in(v) * b * x ** (dr - db)
    return r


def _prs_gcd(a: MultiPoly, b: MultiPoly, v: str) -> MultiPoly:
    """Primitive PRS gcd of two polynomials primitive with respect to ``v``."""
    if a.degree(v) < b.degree(v):
        a, b = b, a
    while not b.is_zero():
        if b.degree(v) == 0:
            return ONE
        r = _prem(a, b, v)
        a = b
        if r.is_zero():
            b = r
        else:
            b = r.exact_div(_content_in(r, v)).primitive()
    return a.exact_div(_content_in(a, v)).primitive() if a.degree(v) > 0 else ONE


def poly_lcm(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    if a.is_zero() or b.is_zero():
        return ZERO
    return (a * b).exact_div(poly_gcd(a, b)).primitive()


# ---------------------------------------------------------------------------
# rational functions


class RatFunc:
    """Quotient of polynomials kept in lowest terms.

    The denominator is an integer-coefficient primitive polynomial with
    positive leading coefficient, so structural equality is equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, normalized: bool = False):
        num = MultiPoly.coerce(num)
        den = ONE if den is None else MultiPoly.coerce(den)
        if den.is_zero():
            raise DivisionByZeroError("rational function with zero denominator")
        if not normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return cls(MultiPoly.coerce(x))

    @property
    def vars(self) -> Tuple[str, ...]:
        return tuple(sorted(set(self.num.vars) | set(self.den.vars)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _rat_or_none(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, normalized=True)

    def __sub__(self, other):
        other = _rat_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _rat_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _rat_or_none(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _rat_or_none(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZeroError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _rat_or_none(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if k >= 0:
            return RatFunc(self.num ** k, self.den ** k, normalized=True) if k else RatFunc(ONE)
        if self.is_zero():
            raise DivisionByZeroError("negative power of zero")
        return RatFunc(self.den ** (-k), self.num ** (-k))

    def shift(self, var: str, by: int | Fraction) -> "RatFunc":
        return RatFunc(self.num.shift(var, by), self.den.shift(var, by))

    def subs(self, mapping) -> "RatFunc":
        den = self.den.subs(mapping)
        if den.is_zero():
            raise PoleError(f"denominator of {self} vanishes under substitution", mapping if all(
                isinstance(x, (int, Fraction)) for x in mapping.values()) else None)
        return RatFunc(self.num.subs(mapping), den)

    def evaluate(self, point: Mapping[str, Scalar]) -> Fraction:
        d = self.den.evaluate(point)
        if not d:
            raise PoleError(f"{self} has a pole at {dict(point)}", point)
        return self.num.evaluate(point) / d

    def display(self, order: Sequence[str] = ()) -> str:
        """Human form with the rational content of the numerator moved outside.

        With ``order``, powers of those variables are written first and the
        denominator is oriented so that its first term is positive.
        """
        if self.num.is_zero():
            return "0"
        num, den = self.num, self.den
        if order and not den.is_constant() and den.terms[den._ordered_monomials(order)[0]] < 0:
            num, den = -num, -den
        c = num.content()
        if num.leading_coefficient() < 0:
            c = -c
        p = num * (1 / c)
        sign = "-" if c < 0 else ""
        a, b = abs(c.numerator), c.denominator
        if p.is_constant():
            top = str(a)
        else:
            top = _wrap(p, order) if a == 1 else f"{a}*{_wrap(p, order)}"
        if den.is_constant() and b == 1:
            return sign + top
        if den.is_constant():
            bottom = str(b)
        elif b == 1:
            bottom = _wrap(den, order)
            if len(den.terms) == 1 and "*" in bottom:
                bottom = f"({bottom})"
        else:
            bottom = f"({b}*{_wrap(den, order)})"
        return f"{sign}{top}/{bottom}"

    def __str__(self):
        return self.display()

    def __repr__(self):
        return f"RatFunc({self.display()!r})"

    def to_record(self):
        return {"numerator": self.num.to_record(), "denominator": self.den.to_record()}

    @classmethod
    def from_record(cls, rec) -> "RatFunc":
        return cls(MultiPoly.from_record(rec["numerator"]), MultiPoly.from_record(rec["denominator"]))


def _wrap(p: MultiPoly, order: Sequence[str] = ()) -> str:
    s = p.format(order)
    if len(p.terms) > 1:
        return f"({s})"
    return s


def _rat_or_none(x):
    if isinstance(x, RatFunc):
        return x
    if isinstance(x, (int, Fraction, MultiPoly)):
        return RatFunc(x)
    return None


def _normalize(num: MultiPoly, den: MultiPoly):
    if num.is_zero():
        return ZERO, ONE
    if not den.is_constant() and not num.is_constant():
        g = poly_gcd(num, den)
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
    c = den.content()
    if den.leading_coefficient() < 0:
        c = -c
    return num * (1 / c), den * (1 / c)


def rat_normalize(num: MultiPoly, den: MultiPoly) -> RatFunc:
    if MultiPoly.coerce(den).is_zero():
        raise DivisionByZeroError("rat_normalize with zero denominator")
    return RatFunc(num, den)


def rat_specialize(r: RatFunc, assignment: Mapping[str, object]) -> RatFunc:
    """Apply shifts and values.

    ``assignment`` maps a variable to ``("shift", c)`` for ``v -> v + c`` or to a
    rational value.  Shifts are applied before values.
    """
    shifts = {v: x[1] for v, x in assignment.items() if isinstance(x, tuple) and x[0] == "shift"}
    values = {v: x for v, x in assignment.items() if not isinstance(x, tuple)}
    out = r
    for v, c in shifts.items():
        out = out.shift(v, c)
    if values:
        den = out.den.partial_evaluate(values)
        if den.is_zero():
            raise PoleError(f"{r} has a pole at {values}", values)
        out = RatFunc(out.num.partial_evaluate(values), den)
    return out


def X(name: str) -> MultiPoly:
    return MultiPoly.var(name)


def poly_from_string(src: str) -> MultiPoly:
    """Parse a polynomial written with + - * ^ and integer/rational literals."""
    from .dsl import parse_polynomial

    return parse_polynomial(src)
