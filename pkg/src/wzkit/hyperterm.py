"""Proper-hypergeometric terms and their shift quotients.

A :class:`HyperTerm` is a rational constant times a product of atoms raised
to integer powers: factorials, binomials and Pochhammer symbols of
integer-linear arguments, geometric powers, signs ``(-1)^L`` and polynomial
factors.  Its shift quotient in any variable is a :class:`RatFunc`, which is
what lets summation identities be checked with rational-function algebra.

Support convention: ``1/m!`` is ``0`` for a negative integer ``m`` and
``(b)_m`` is evaluated as the finite rising product, so terms vanish outside
their natural support instead of producing poles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial as _fact
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .errors import NotHypergeometricError, PoleError
from .poly import ONE, MultiPoly, RatFunc, _frac

Number = Union[int, Fraction]


# ---------------------------------------------------------------------------
# linear forms


@dataclass(frozen=True)
class LinForm:
    """``sum c_v * v + const`` with integer ``c_v`` and rational ``const``."""

    coeffs: Tuple[Tuple[str, int], ...] = ()
    const: Fraction = Fraction(0)

    def __post_init__(self):
        cs = tuple(sorted((v, int(c)) for v, c in self.coeffs if c))
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "const", _frac(self.const))

    @classmethod
    def coerce(cls, x) -> "LinForm":
        if isinstance(x, LinForm):
            return x
        if isinstance(x, str):
            if not x.isidentifier():
                raise ValueError(f"not a variable name: {x!r}")
            return cls(((x, 1),))
        if isinstance(x, (int, Fraction)):
            return cls((), _frac(x))
        if isinstance(x, MultiPoly):
            return cls.from_poly(x)
        raise TypeError(f"cannot make a linear form from {x!r}")

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "LinForm":
        if p.degree() > 1:
            raise NotHypergeometricError(f"argument {p} is not linear")
        coeffs = []
        const = Fraction(0)
        for e, c in p.terms.items():
            if sum(e) == 0:
                const = c
            else:
                v = p.vars[e.index(1)]
                if c.denominator != 1:
                    raise NotHypergeometricError(f"argument {p} has a non-integer coefficient")
                coeffs.append((v, int(c)))
        return cls(tuple(coeffs), const)

    def to_poly(self) -> MultiPoly:
        out = MultiPoly.const(self.const)
        for v, c in self.coeffs:
            out = out + MultiPoly.var(v) * c
        return out

    @property
    def vars(self) -> Tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)

    def coeff(self, var: str) -> int:
        for v, c in self.coeffs:
            if v == var:
                return c
        return 0

    def is_constant(self) -> bool:
        return not self.coeffs

    def has_integer_const(self) -> bool:
        return self.const.denominator == 1

    def without(self, var: str) -> "LinForm":
        return LinForm(tuple((v, c) for v, c in self.coeffs if v != var), self.const)

    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        total = self.const
        for v, c in self.coeffs:
            if v not in point:
                raise KeyError(f"no value for {v}")
            total += c * _frac(point[v])
        return total

    def shift(self, var: str, by: int) -> "LinForm":
        return LinForm(self.coeffs, self.const + self.coeff(var) * by)

    def subs(self, var: str, other: "LinForm") -> "LinForm":
        c = self.coeff(var)
        if not c:
            return self
        return self.without(var) + other * c

    def __add__(self, other):
        other = LinForm.coerce(other)
        d: Dict[str, int] = dict(self.coeffs)
        for v, c in other.coeffs:
            d[v] = d.get(v, 0) + c
        return LinForm(tuple(d.items()), self.const + other.const)

    __radd__ = __add__

    def __neg__(self):
        return LinForm(tuple((v, -c) for v, c in self.coeffs), -self.const)

    def __sub__(self, other):
        return self + (-LinForm.coerce(other))

    def __rsub__(self, other):
        return LinForm.coerce(other) - self

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return LinForm(tuple((v, c * k) for v, c in self.coeffs), self.const * k)

    __rmul__ = __mul__

    def __str__(self):
        pos = [(v, c) for v, c in self.coeffs if c > 0]
        neg = [(v, c) for v, c in self.coeffs if c < 0]
        parts: List[Tuple[str, str]] = []
        for v, c in pos + neg:
            mag = abs(c)
            parts.append(("-" if c < 0 else "+", v if mag == 1 else f"{mag}*{v}"))
        if self.const or not parts:
            parts.append(("-" if self.const < 0 else "+", _fmt_num(abs(self.const))))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def is_atomic_str(self) -> bool:
        s = str(self)
        return all(ch not in s for ch in " */-")


def _fmt_num(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def lin(x) -> LinForm:
    return LinForm.coerce(x)


# ---------------------------------------------------------------------------
# atoms


class Atom:
    rank = 0

    def vars(self) -> Tuple[str, ...]:
        raise NotImplementedError

    def sort_key(self):
        return (self.rank, self.display())


@dataclass(frozen=True)
class Factorial(Atom):
    arg: LinForm
    rank = 1

    def __post_init__(self):
        if not self.arg.has_integer_const():
            raise NotHypergeometricError(f"factorial argument {self.arg} must have an integer offset")

    def vars(self):
        return self.arg.vars

    def display(self):
        return f"factorial({self.arg})"

    def latex(self):
        s = str(self.arg)
        return f"{s}!" if self.arg.is_atomic_str() else f"({s})!"


@dataclass(frozen=True)
class Binomial(Atom):
    top: LinForm
    bottom: LinForm
    rank = 0

    def __post_init__(self):
        if not (self.top.has_integer_const() and self.bottom.has_integer_const()):
            raise NotHypergeometricError("binomial arguments must have integer offsets")

    def vars(self):
        return tuple(sorted(set(self.top.vars) | set(self.bottom.vars)))

    def display(self):
        return f"binomial({self.top}, {self.bottom})"

    def latex(self):
        return f"{{{self.top} \\choose {self.bottom}}}"


@dataclass(frozen=True)
class Pochhammer(Atom):
    """Rising factorial ``(base)_length``; ``base`` may carry a rational offset."""

    base: LinForm
    length: LinForm
    rank = 2

    def __post_init__(self):
        if not self.length.has_integer_const():
            raise NotHypergeometricError("Pochhammer length must have an integer offset")

    def vars(self):
        return tuple(sorted(set(self.base.vars) | set(self.length.vars)))

    def display(self):
        return f"poch({self.base}, {self.length})"

    def latex(self):
        return f"({self.base})_{{{self.length}}}"


@dataclass(frozen=True)
class Power(Atom):
    """``base ** exponent`` for a base free of the exponent's variables."""

    base: MultiPoly
    exponent: LinForm
    rank = 4

    def vars(self):
        return tuple(sorted(set(self.base.vars) | set(self.exponent.vars)))

    def _base_str(self, e: LinForm):
        b = self.base
        if b.is_constant():
            c = b.constant_value()
            bs = str(c.numerator) if c.denominator == 1 and c > 0 else f"({_fmt_num(c)})"
        elif len(b.terms) == 1 and len(b.vars) == 1 and b.degree() == 1 and b.leading_coefficient() == 1:
            bs = str(b)
        else:
            bs = f"({b})"
        es = str(e) if e.is_atomic_str() else f"({e})"
        return bs, es

    def display(self, e: Optional[LinForm] = None):
        bs, es = self._base_str(self.exponent if e is None else e)
        return f"{bs}^{es}"

    def latex(self, e: Optional[LinForm] = None):
        e = self.exponent if e is None else e
        b = self.base
        bs = str(b) if (b.is_constant() and b.constant_value() > 0 and b.constant_value().denominator == 1) or (
            len(b.terms) == 1 and b.degree() == 1) else f"({b})"
        return f"{bs}^{{{e}}}"


@dataclass(frozen=True)
class Sign(Atom):
    """``(-1)^exponent``."""

    exponent: LinForm
    rank = 3

    def vars(self):
        return self.exponent.vars

    def display(self):
        e = self.exponent
        es = str(e) if e.is_atomic_str() else f"({e})"
        return f"(-1)^{es}"

    def latex(self):
        return f"(-1)^{{{self.exponent}}}"


@dataclass(frozen=True)
class PolyFactor(Atom):
    poly: MultiPoly
    rank = 5

    def vars(self):
        return self.poly.vars

    def display(self):
        s = str(self.poly)
        if len(self.poly.terms) == 1 and "*" not in s:
            return s
        return f"({s})"

    def latex(self):
        s = str(self.poly).replace("*", " ")
        if len(self.poly.terms) == 1:
            return s
        return f"({s})"


# ---------------------------------------------------------------------------
# evaluation of single atoms

_ZERO, _POLE = "zero", "pole"


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NotHypergeometricError(f"{what} evaluated to non-integer {x}")
    return x.numerator


def _rising(b: Fraction, m: int):
    """``(b)_m`` as a Fraction, or the marker ``_POLE``."""
    if m >= 0:
        out = Fraction(1)
        for i in range(m):
            out *= b + i
        return out
    d = Fraction(1)
    for i in range(1, -m + 1):
        d *= b - i
    if not d:
        return _POLE
    return 1 / d


def _binomial_value(a: int, b: int) -> Fraction:
    if a >= 0:
        return Fraction(comb(a, b)) if 0 <= b <= a else Fraction(0)
    if b < 0:
        return Fraction(0)
    # negative upper index: falling-product convention
    out = Fraction(1)
    for i in range(b):
        out *= a - i
    return out / _fact(b)


def _atom_value(atom: Atom, point: Mapping[str, Number]):
    if isinstance(atom, Factorial):
        m = _as_int(atom.arg.evaluate(point), "factorial argument")
        return Fraction(_fact(m)) if m >= 0 else _POLE
    if isinstance(atom, Binomial):
        a = _as_int(atom.top.evaluate(point), "binomial top")
        b = _as_int(atom.bottom.evaluate(point), "binomial bottom")
        return _binomial_value(a, b)
    if isinstance(atom, Pochhammer):
        b = atom.base.evaluate(point)
        m = _as_int(atom.length.evaluate(point), "Pochhammer length")
        return _rising(b, m)
    if isinstance(atom, Power):
        base = atom.base.evaluate(point)
        m = _as_int(atom.exponent.evaluate(point), "exponent")
        if not base:
            if m > 0:
                return Fraction(0)
            if m == 0:
                return Fraction(1)
            return _POLE
        return base ** m
    if isinstance(atom, Sign):
        m = _as_int(atom.exponent.evaluate(point), "sign exponent")
        return Fraction(-1 if m % 2 else 1)
    if isinstance(atom, PolyFactor):
        return atom.poly.evaluate(point)
    raise TypeError(atom)


# ---------------------------------------------------------------------------
# shift quotients of single atoms, as (constant, numerator factors, denominator factors)


def _gamma_ratio(x: LinForm, m: int):
    """Gamma(x + m) / Gamma(x) as factor lists."""
    num, den = [], []
    if m > 0:
        num = [(x + i).to_poly() for i in range(m)]
    elif m < 0:
        den = [(x - i).to_poly() for i in range(1, -m + 1)]
    return num, den


def _atom_quotient(atom: Atom, v: str):
    """Factors of atom(v+1)/atom(v)."""
    const = Fraction(1)
    num: List[MultiPoly] = []
    den: List[MultiPoly] = []
    if isinstance(atom, Factorial):
        n1, d1 = _gamma_ratio(atom.arg + 1, atom.arg.coeff(v))
        num, den = n1, d1
    elif isinstance(atom, Binomial):
        for sub, sgn in (
            (Factorial(atom.top), 1),
            (Factorial(atom.bottom), -1),
            (Factorial(atom.top - atom.bottom), -1),
        ):
            c, a, b = _atom_quotient(sub, v)
            if sgn > 0:
                num += a
                den += b
            else:
                num += b
                den += a
    elif isinstance(atom, Pochhammer):
        top = atom.base + atom.length
        a1, b1 = _gamma_ratio(top, top.coeff(v))
        a2, b2 = _gamma_ratio(atom.base, atom.base.coeff(v))
        num, den = a1 + b2, b1 + a2
    elif isinstance(atom, Power):
        if v in atom.base.vars:
            raise NotHypergeometricError(f"{atom.display()} is not hypergeometric in {v}")
        c = atom.exponent.coeff(v)
        if atom.base.is_constant():
            const = atom.base.constant_value() ** c
        elif c > 0:
            num = [atom.base] * c
        elif c < 0:
            den = [atom.base] * (-c)
    elif isinstance(atom, Sign):
        const = Fraction(-1) ** (atom.exponent.coeff(v) % 2)
    elif isinstance(atom, PolyFactor):
        if v in atom.poly.vars:
            num = [atom.poly.shift(v, 1)]
            den = [atom.poly]
    else:
        raise TypeError(atom)
    return const, num, den


# ---------------------------------------------------------------------------
# hypergeometric terms


@dataclass(frozen=True)
class Support:
    """Bounds outside of which a term vanishes; absent side means unbounded.

    ``guarded`` holds ``(side, bound, guard)`` entries, with side ``"lo"`` or
    ``"hi"``, that apply only where ``guard >= 0``.  A binomial with a
    negative top does not vanish, so its ``top - bottom >= 0`` bound is
    guarded by the top.
    """

    lowers: Tuple[LinForm, ...] = ()
    uppers: Tuple[LinForm, ...] = ()
    guarded: Tuple[Tuple[str, LinForm, LinForm], ...] = ()

    def bounds(self, nonneg: Sequence[str] = ("n",)) -> Tuple[Tuple[LinForm, ...], Tuple[LinForm, ...]]:
        """Bounds valid whenever the variables in ``nonneg`` are >= 0."""
        sure = [(side, b) for side, b, g in self.guarded if _sure_nonneg(g, nonneg)]
        return (self.lowers + tuple(b for side, b in sure if side == "lo"),
                self.uppers + tuple(b for side, b in sure if side == "hi"))

    def tightest(self, nonneg: Sequence[str] = ("n",)) -> Tuple[Optional[LinForm], Optional[LinForm]]:
        """Best lower and upper bound of :meth:`bounds`, where comparable."""
        lowers, uppers = self.bounds(nonneg)
        return _tightest(lowers, max), _tightest(uppers, min)

    @property
    def lower(self) -> Optional[LinForm]:
        return self.tightest()[0]

    @property
    def upper(self) -> Optional[LinForm]:
        return self.tightest()[1]

    def is_finite(self, nonneg: Sequence[str] = ("n",)) -> bool:
        lowers, uppers = self.bounds(nonneg)
        return bool(lowers) and bool(uppers)

    def resolve(self, point: Mapping[str, Number]) -> Tuple[Optional[int], Optional[int]]:
        from math import ceil, floor

        lowers, uppers = list(self.lowers), list(self.uppers)
        for side, b, g in self.guarded:
            try:
                active = g.evaluate(point) >= 0
            except KeyError:
                continue
            if active:
                (lowers if side == "lo" else uppers).append(b)
        lo = max((ceil(b.evaluate(point)) for b in lowers), default=None)
        hi = min((floor(b.evaluate(point)) for b in uppers), default=None)
        return lo, hi


def _sure_nonneg(g: LinForm, nonneg: Sequence[str]) -> bool:
    return g.const >= 0 and all(var in nonneg and c >= 0 for var, c in g.coeffs)


def _tightest(cands: Sequence[LinForm], pick) -> Optional[LinForm]:
    if not cands:
        return None
    best = cands[0]
    for c in cands[1:]:
        d = c - best
        if d.is_constant() and pick(d.const, 0) == d.const and d.const != 0:
            best = c
    return best


class HyperTerm:
    """Immutable product ``constant * prod(atom ** exponent)``."""

    __slots__ = ("constant", "atoms", "_key")

    def __init__(self, constant: Number = 1, atoms: Iterable[Tuple[Atom, int]] = ()):
        constant = _frac(constant)
        if not constant:
            raise ValueError("a hypergeometric term needs a nonzero constant")
        merged: Dict[Atom, int] = {}
        powers: Dict[MultiPoly, LinForm] = {}
        sign_exp = LinForm()
        canon_powers: Dict[MultiPoly, LinForm] = {}

        def add(pieces):
            nonlocal sign_exp
            for a2, e2 in pieces:
                if isinstance(a2, Sign):
                    sign_exp = sign_exp + a2.exponent * e2
                elif isinstance(a2, Power):
                    canon_powers[a2.base] = canon_powers.get(a2.base, LinForm()) + a2.exponent * e2
                else:
                    merged[a2] = merged.get(a2, 0) + e2

        for atom, e in atoms:
            if not e:
                continue
            if isinstance(atom, Power):
                powers[atom.base] = powers.get(atom.base, LinForm()) + atom.exponent * e
            elif isinstance(atom, Sign):
                sign_exp = sign_exp + atom.exponent * e
            else:
                c, pieces = _canonical_atom(atom, e)
                constant *= c
                add(pieces)
        for base in sorted(powers, key=str):
            c, pieces = _canonical_power(base, powers[base])
            constant *= c
            add(pieces)
        for base, L in canon_powers.items():
            if L.coeffs:
                merged[Power(base, L)] = 1
        c, pieces = _canonical_sign(sign_exp)
        constant *= c
        for a2, e2 in pieces:
            merged[a2] = merged.get(a2, 0) + e2
        self.constant = constant
        self.atoms = tuple(sorted(((a, e) for a, e in merged.items() if e), key=lambda ae: (ae[0].sort_key(), ae[1])))
        self._key = None

    # -- identity -----------------------------------------------------------
    def key(self):
        if self._key is None:
            self._key = (self.constant, self.atoms)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, HyperTerm):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def variables(self) -> Tuple[str, ...]:
        vs = set()
        for a, _ in self.atoms:
            vs.update(a.vars())
        return tuple(sorted(vs))

    def is_one(self) -> bool:
        return self.constant == 1 and not self.atoms

    # -- arithmetic -----------------------------------------------------------
    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HyperTerm(other)
        if isinstance(other, MultiPoly):
            other = HyperTerm.from_poly(other)
        if not isinstance(other, HyperTerm):
            return NotImplemented
        return HyperTerm(self.constant * other.constant, self.atoms + other.atoms)

    __rmul__ = __mul__

    def inverse(self) -> "HyperTerm":
        return HyperTerm(1 / self.constant, [(a, -e) for a, e in self.atoms])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = HyperTerm(other)
        if isinstance(other, MultiPoly):
            other = HyperTerm.from_poly(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return HyperTerm(other) * self.inverse()

    def __pow__(self, k: int):
        return HyperTerm(self.constant ** k, [(a, e * k) for a, e in self.atoms])

    def __neg__(self):
        return HyperTerm(-self.constant, self.atoms)

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "HyperTerm":
        if p.is_zero():
            raise ValueError("the zero polynomial is not a hypergeometric term")
        return cls(1, [(PolyFactor(p), 1)])

    def shift(self, var: str, by: int) -> "HyperTerm":
        out = []
        for a, e in self.atoms:
            out.append((_shift_atom(a, var, by), e))
        return HyperTerm(self.constant, out)

    def expand_binomials(self) -> "HyperTerm":
        out = []
        for a, e in self.atoms:
            if isinstance(a, Binomial):
                out += [
                    (Factorial(a.top), e),
                    (Factorial(a.bottom), -e),
                    (Factorial(a.top - a.bottom), -e),
                ]
            else:
                out.append((a, e))
        return HyperTerm(self.constant, out)

    # -- shift quotient -----------------------------------------------------------
    def shift_quotient_factors(self, v: str):
        const = Fraction(1)
        num: List[MultiPoly] = []
        den: List[MultiPoly] = []
        for atom, e in self.atoms:
            if v not in atom.vars():
                continue
            c, a, b = _atom_quotient(atom, v)
            if e < 0:
                a, b, c = b, a, 1 / c
            for _ in range(abs(e)):
                const *= c
                num += a
                den += b
        # cancel identical factors
        rest = list(den)
        kept = []
        for f in num:
            if f in rest:
                rest.remove(f)
            else:
                kept.append(f)
        return const, kept, rest

    def shift_quotient(self, v: str) -> RatFunc:
        """``t(v+1)/t(v)`` as a normalized rational function."""
        const, num, den = self.shift_quotient_factors(v)
        p = MultiPoly.const(const)
        for f in num:
            p = p * f
        q = ONE
        for f in den:
            q = q * f
        return RatFunc(p, q)

    # -- evaluation -----------------------------------------------------------
    def evaluate(self, point: Mapping[str, Number]) -> Fraction:
        value = self.constant
        zeros = poles = 0
        for atom, e in self.atoms:
            x = _atom_value(atom, point)
            if x is _POLE or (isinstance(x, Fraction) and not x):
                is_pole = x is _POLE
                if (e > 0) == is_pole:
                    poles += abs(e)
                else:
                    zeros += abs(e)
                continue
            value *= x ** e
        if poles:
            if zeros:
                raise PoleError(f"indeterminate zero/pole product in {self} at {dict(point)}", point)
            raise PoleError(f"{self} has a pole at {dict(point)}", point)
        if zeros:
            return Fraction(0)
        return value

    def evaluate_symbolic(self, point: Mapping[str, Number]) -> RatFunc:
        """Value with ``point`` substituted, keeping free parameters symbolic.

        Every variable that occurs outside polynomial factors and power bases
        must be assigned.
        """
        value = RatFunc(MultiPoly.const(self.constant))
        zeros = poles = 0
        for atom, e in self.atoms:
            if set(atom.vars()) <= set(point):
                x = _atom_value(atom, point)
                if x is _POLE or not x:
                    if (e > 0) == (x is _POLE):
                        poles += abs(e)
                    else:
                        zeros += abs(e)
                    continue
                value = value * RatFunc(MultiPoly.const(x ** e))
                continue
            if isinstance(atom, PolyFactor):
                p = atom.poly.partial_evaluate(point)
            elif isinstance(atom, Power) and set(atom.exponent.vars) <= set(point):
                p = atom.base.partial_evaluate(point)
                e = e * _as_int(atom.exponent.evaluate(point), "exponent")
            else:
                raise ValueError(f"cannot evaluate {atom.display()} with only {sorted(point)} assigned")
            if p.is_zero():
                if e > 0:
                    zeros += 1
                elif e < 0:
                    poles += 1
                continue
            value = value * RatFunc(p) ** e
        if poles:
            raise PoleError(f"{self} has a pole at {dict(point)}", point)
        if zeros:
            return RatFunc(MultiPoly())
        return value

    # -- support -----------------------------------------------------------
    def natural_support(self, v: str) -> Support:
        lowers: List[LinForm] = []
        uppers: List[LinForm] = []
        guarded: List[Tuple[str, LinForm, LinForm]] = []

        def from_reciprocal_factorial(L: LinForm, guard: Optional[LinForm] = None):
            c = L.coeff(v)
            rest = L.without(v)
            bound = None
            if c == 1:
                side, bound = "lo", -rest
            elif c == -1:
                side, bound = "hi", rest
            elif c and rest.is_constant():
                from math import ceil, floor

                x = Fraction(-rest.const, c)
                side, bound = ("lo", LinForm((), ceil(x))) if c > 0 else ("hi", LinForm((), floor(x)))
            if bound is None:
                return
            if guard is not None:
                guarded.append((side, bound, guard))
            else:
                (lowers if side == "lo" else uppers).append(bound)

        for atom, e in self.atoms:
            if v not in atom.vars():
                continue
            if isinstance(atom, Factorial) and e < 0:
                from_reciprocal_factorial(atom.arg)
            elif isinstance(atom, Binomial) and e > 0:
                from_reciprocal_factorial(atom.bottom)
                # a negative top gives a nonzero value for every bottom >= 0
                from_reciprocal_factorial(atom.top - atom.bottom, guard=atom.top)
            elif isinstance(atom, Pochhammer) and e > 0:
                b = atom.base
                if b.coeff(v) == 0 and atom.length.coeff(v) == 1 and b.has_integer_const():
                    # (b)_L vanishes once L > -b, provided -b is a nonnegative integer
                    guarded.append(("hi", -b - atom.length.without(v), -b))
        return Support(tuple(_dedupe(lowers)), tuple(_dedupe(uppers)), tuple(dict.fromkeys(guarded)))

    # -- closed forms -----------------------------------------------------------
    def mul_ratfunc(self, r: RatFunc) -> "HyperTerm":
        """Closed product form of ``r * self``: linear factors of ``r`` are
        absorbed into factorial, Pochhammer and power atoms where possible."""
        if r.is_zero():
            raise ValueError("cannot form a hypergeometric term from zero")
        t = self.expand_binomials()
        num, den = r.num, r.den
        units: List[Tuple[Atom, int]] = []
        const = t.constant
        for atom, e in t.atoms:
            if isinstance(atom, PolyFactor):
                if e > 0:
                    num = num * atom.poly ** e
                else:
                    den = den * atom.poly ** (-e)
            elif isinstance(atom, (Factorial, Pochhammer)):
                units += [(atom, 1 if e > 0 else -1)] * abs(e)
            else:
                units.append((atom, e))
        rr = RatFunc(num, den)
        num, den = rr.num, rr.den
        changed = True
        while changed:
            changed = False
            for i, (atom, e) in enumerate(units):
                for which, factor, new_atom in _absorptions(atom, e):
                    target = num if which == "num" else den
                    if target.is_constant() or not set(factor.vars) <= set(target.vars):
                        continue
                    try:
                        q = target.exact_div(factor)
                    except Exception:
                        continue
                    if which == "num":
                        num = q
                    else:
                        den = q
                    units[i] = (new_atom, e)
                    changed = True
                    break
        atoms = list(units)
        if not num.is_constant():
            atoms.append((PolyFactor(num), 1))
        else:
            const *= num.constant_value()
        if not den.is_constant():
            atoms.append((PolyFactor(den), -1))
        else:
            const /= den.constant_value()
        return HyperTerm(const, atoms)

    # -- display -----------------------------------------------------------
    def _split(self):
        num, den = [], []
        for atom, e in self.atoms:
            if isinstance(atom, Power):
                if _all_negative(atom.exponent):
                    den.append(atom.display(-atom.exponent))
                else:
                    num.append(atom.display())
                continue
            s = atom.display()
            if e > 0:
                num.append(s if e == 1 else f"{s}^{e}")
            else:
                den.append(s if e == -1 else f"{s}^{-e}")
        return num, den

    def __str__(self):
        num, den = self._split()
        c = self.constant
        cn, cd = c.numerator, c.denominator
        lead = ""
        if cn < 0:
            lead = "-"
            cn = -cn
        if cn != 1 or not num:
            num = [str(cn)] + num
        if cd != 1:
            den = [str(cd)] + den
        top = " * ".join(num)
        if not den:
            return lead + top
        bottom = den[0] if len(den) == 1 else "(" + " * ".join(den) + ")"
        return f"{lead}{top} / {bottom}"

    def __repr__(self):
        return f"HyperTerm({str(self)!r})"

    def latex(self) -> str:
        num, den = [], []
        for atom, e in self.atoms:
            if isinstance(atom, Power):
                neg = _all_negative(atom.exponent)
                (den if neg else num).append(atom.latex(-atom.exponent if neg else None))
                continue
            s = atom.latex()
            if abs(e) != 1:
                s = f"{{{s}}}^{{{abs(e)}}}"
            (num if e > 0 else den).append(s)
        c = self.constant
        sign = "-" if c < 0 else ""
        cn, cd = abs(c.numerator), c.denominator
        if cn != 1 or not num:
            num.insert(0, str(cn))
        if cd != 1:
            den.insert(0, str(cd))
        top = " ".join(num)
        if not den:
            return sign + top
        return f"{sign}{{{top}}} \\over {{{' '.join(den)}}}"


def _all_negative(L: LinForm) -> bool:
    return all(c < 0 for _, c in L.coeffs) and L.const <= 0


def _dedupe(xs):
    out = []
    for x in xs:
        if x not in out:
            out.append(x)
    return out


def _absorptions(atom: Atom, e: int):
    """Ways a single linear factor merges into a unit atom: (side, factor, new atom)."""
    if isinstance(atom, Factorial):
        L = atom.arg
        if e > 0:
            return [("num", (L + 1).to_poly(), Factorial(L + 1)), ("den", L.to_poly(), Factorial(L - 1))]
        return [("num", L.to_poly(), Factorial(L - 1)), ("den", (L + 1).to_poly(), Factorial(L + 1))]
    if isinstance(atom, Pochhammer):
        B, L = atom.base, atom.length
        if e > 0:
            return [
                ("num", (B + L).to_poly(), Pochhammer(B, L + 1)),
                ("den", (B + L - 1).to_poly(), Pochhammer(B, L - 1)),
            ]
        return [
            ("num", (B + L - 1).to_poly(), Pochhammer(B, L - 1)),
            ("den", (B + L).to_poly(), Pochhammer(B, L + 1)),
        ]
    if isinstance(atom, Power) and not atom.base.is_constant():
        return [
            ("num", atom.base, Power(atom.base, atom.exponent + 1)),
            ("den", atom.base, Power(atom.base, atom.exponent - 1)),
        ]
    return []


def _shift_atom(a: Atom, var: str, by: int) -> Atom:
    if isinstance(a, Factorial):
        return Factorial(a.arg.shift(var, by))
    if isinstance(a, Binomial):
        return Binomial(a.top.shift(var, by), a.bottom.shift(var, by))
    if isinstance(a, Pochhammer):
        return Pochhammer(a.base.shift(var, by), a.length.shift(var, by))
    if isinstance(a, Power):
        return Power(a.base.shift(var, by), a.exponent.shift(var, by))
    if isinstance(a, Sign):
        return Sign(a.exponent.shift(var, by))
    if isinstance(a, PolyFactor):
        return PolyFactor(a.poly.shift(var, by))
    raise TypeError(a)


def _canonical_atom(atom: Atom, e: int):
    """Return (constant, [(atom, exponent), ...]) for one raw atom power."""
    one = Fraction(1)
    if isinstance(atom, PolyFactor):
        p = atom.poly
        if p.is_zero():
            raise ValueError("zero polynomial factor")
        if p.is_constant():
            return p.constant_value() ** e, []
        q = p.primitive()
        c = p.leading_coefficient() / q.leading_coefficient()
        return c ** e, [(PolyFactor(q), e)]
    if isinstance(atom, Factorial):
        if atom.arg.is_constant() and atom.arg.const >= 0:
            return Fraction(_fact(int(atom.arg.const))) ** e, []
        return one, [(atom, e)]
    if isinstance(atom, Binomial):
        if atom.top.is_constant() and atom.bottom.is_constant():
            val = _binomial_value(int(atom.top.const), int(atom.bottom.const))
            if val:
                return val ** e, []
        return one, [(atom, e)]
    if isinstance(atom, Pochhammer):
        if atom.base.is_constant() and atom.length.is_constant():
            val = _rising(atom.base.const, int(atom.length.const))
            if val is not _POLE and val:
                return val ** e, []
        return one, [(atom, e)]
    raise TypeError(atom)


def _canonical_power(base: MultiPoly, L: LinForm):
    """Split ``base ** L`` into a constant and canonical atoms."""
    one = Fraction(1)
    if base.is_zero():
        raise ValueError("zero base in a power atom")
    if set(base.vars) & set(L.vars):
        raise NotHypergeometricError(f"({base})^({L}) is not hypergeometric")
    if not L.has_integer_const():
        raise NotHypergeometricError("power exponent must have an integer offset")
    k = int(L.const)
    L = LinForm(L.coeffs, 0)
    if base.is_constant():
        b = base.constant_value()
        c = b ** k
        if not L.coeffs or b == 1:
            return c, []
        pieces = [(Sign(L), 1)] if b < 0 else []
        for p, m in _factor_int(abs(b.numerator)).items():
            pieces.append((Power(MultiPoly.const(p), L * m), 1))
        for p, m in _factor_int(b.denominator).items():
            pieces.append((Power(MultiPoly.const(p), L * -m), 1))
        return c, pieces
    prim = base.primitive()
    scale = base.leading_coefficient() / prim.leading_coefficient()
    c, pieces = _canonical_power(MultiPoly.const(scale), LinForm(L.coeffs, k)) if scale != 1 else (one, [])
    pieces = list(pieces)
    if k:
        pieces.append((PolyFactor(prim), k))
    if L.coeffs:
        pieces.append((Power(prim, L), 1))
    return c, pieces


def _factor_int(m: int, limit: int = 10 ** 4) -> Dict[int, int]:
    """Prime factorization by trial division; a cofactor above ``limit`` is kept whole."""
    out: Dict[int, int] = {}
    d = 2
    while m > 1 and d * d <= m and d <= limit:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _canonical_sign(L: LinForm):
    if not L.has_integer_const():
        raise NotHypergeometricError("sign exponent must be an integer form")
    coeffs = tuple((v, k % 2) for v, k in L.coeffs)
    c = Fraction(-1) if int(L.const) % 2 else Fraction(1)
    if not any(k for _, k in coeffs):
        return c, []
    return c, [(Sign(LinForm(coeffs, 0)), 1)]


# ---------------------------------------------------------------------------
# convenience constructors


def factorial(x) -> HyperTerm:
    return HyperTerm(1, [(Factorial(lin(x)), 1)])


def binomial(a, b) -> HyperTerm:
    return HyperTerm(1, [(Binomial(lin(a), lin(b)), 1)])


def poch(base, length) -> HyperTerm:
    return HyperTerm(1, [(Pochhammer(lin(base), lin(length)), 1)])


def power(base, exponent) -> HyperTerm:
    return HyperTerm(1, [(Power(MultiPoly.coerce(base), lin(exponent)), 1)])


def sign(exponent) -> HyperTerm:
    return HyperTerm(1, [(Sign(lin(exponent)), 1)])


def polyfactor(p) -> HyperTerm:
    return HyperTerm.from_poly(MultiPoly.coerce(p))


ONE_TERM = HyperTerm(1)


# ---------------------------------------------------------------------------
# module-level operations


def shift_quotient(t: HyperTerm, v: str) -> RatFunc:
    return t.shift_quotient(v)


def eval_exact(t: HyperTerm, point: Mapping[str, Number]) -> Fraction:
    return t.evaluate(point)


def natural_support(t: HyperTerm, v: str) -> Support:
    return t.natural_support(v)


def support_box(terms: Sequence[HyperTerm], sum_vars: Sequence[str],
                point: Mapping[str, Number], max_rounds: int = 64):
    """Integer box ``[(lo, hi), ...]`` over ``sum_vars`` outside of which every
    term vanishes at ``point``, or ``None`` if some side stays unbounded.

    Bounds of one variable may involve the others; they are propagated with
    interval arithmetic until nothing changes.
    """
    from math import ceil, floor

    hull = None
    for t in terms:
        sup = {v: t.natural_support(v) for v in sum_vars}
        box = {v: [None, None] for v in sum_vars}

        def extreme(L: LinForm, want_min: bool):
            total = Fraction(L.const)
            for var, c in L.coeffs:
                if var in box:
                    lo, hi = box[var]
                    side = lo if (c > 0) == want_min else hi
                    if side is None:
                        return None
                    total += c * side
                else:
                    total += c * Fraction(point[var])
            return total

        for _ in range(max_rounds):
            changed = False
            for v in sum_vars:
                for L in sup[v].lowers:
                    x = extreme(L, True)
                    if x is not None and (box[v][0] is None or ceil(x) > box[v][0]):
                        box[v][0] = ceil(x)
                        changed = True
                for L in sup[v].uppers:
                    x = extreme(L, False)
                    if x is not None and (box[v][1] is None or floor(x) < box[v][1]):
                        box[v][1] = floor(x)
                        changed = True
                for side, L, guard in sup[v].guarded:
                    g = extreme(guard, True)
                    if g is None or g < 0:
                        continue
                    x = extreme(L, side == "lo")
                    if x is None:
                        continue
                    if side == "lo" and (box[v][0] is None or ceil(x) > box[v][0]):
                        box[v][0] = ceil(x)
                        changed = True
                    elif side == "hi" and (box[v][1] is None or floor(x) < box[v][1]):
                        box[v][1] = floor(x)
                        changed = True
            if not changed:
                break
        if any(lo is None or hi is None for lo, hi in box.values()):
            return None
        cur = [tuple(box[v]) for v in sum_vars]
        if hull is None:
            hull = cur
        else:
            hull = [(min(a[0], b[0]), max(a[1], b[1])) for a, b in zip(hull, cur)]
    return hull


# ---------------------------------------------------------------------------
# identities


@dataclass(frozen=True)
class Identity:
    """``sum over sum_vars of summand == rhs`` where ``rhs`` is a sum of terms.

    ``ranges[i]`` is ``None`` for natural support or an explicit ``(lo, hi)``.
    """

    summand: HyperTerm
    rhs: Tuple[HyperTerm, ...]
    sum_vars: Tuple[str, ...]
    ranges: Tuple[Optional[Tuple[LinForm, LinForm]], ...] = ()
    main_var: str = "n"
    remarks: Tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.sum_vars:
            raise ValueError("an identity needs at least one summation variable")
        if not self.ranges:
            object.__setattr__(self, "ranges", (None,) * len(self.sum_vars))
        if isinstance(self.rhs, HyperTerm):
            object.__setattr__(self, "rhs", (self.rhs,))

    @property
    def r(self) -> int:
        return len(self.sum_vars)

    @property
    def is_normalized(self) -> bool:
        return len(self.rhs) == 1 and self.rhs[0].is_one()

    @property
    def params(self) -> Tuple[str, ...]:
        vs = set(self.summand.variables)
        for t in self.rhs:
            vs.update(t.variables)
        return tuple(sorted(vs - set(self.sum_vars) - {self.main_var}))

    def rhs_value(self, point: Mapping[str, Number]) -> Fraction:
        return sum((t.evaluate(point) for t in self.rhs), Fraction(0))

    def display(self) -> str:
        heads = []
        for v, rg in zip(self.sum_vars, self.ranges):
            heads.append(f"sum {v}" if rg is None else f"sum {v} = {rg[0]}..{rg[1]}")
        rhs = ""
        for t in self.rhs:
            text = str(t)
            if not rhs:
                rhs = text
            elif text.startswith("-"):
                rhs += " - " + text[1:]
            else:
                rhs += " + " + text
        return f"{' '.join(heads)}: {self.summand} == {rhs}"


def divide_by_rhs(identity: Identity) -> Identity:
    """Normalize ``sum F = rhs`` to ``sum F/rhs = 1``."""
    if len(identity.rhs) != 1:
        raise NotHypergeometricError(
            "right-hand side is a sum of terms; dividing by it does not give a hypergeometric summand"
        )
    rhs = identity.rhs[0]
    bad = set(rhs.variables) & set(identity.sum_vars)
    if bad:
        raise NotHypergeometricError(f"right-hand side depends on summation variable(s) {sorted(bad)}")
    if rhs.is_one():
        return identity
    return Identity(
        identity.summand / rhs,
        (ONE_TERM,),
        identity.sum_vars,
        identity.ranges,
        identity.main_var,
        identity.remarks,
    )
