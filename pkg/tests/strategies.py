"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from wzkit.hyperterm import HyperTerm, binomial, factorial, lin, poch, polyfactor, power, sign
from wzkit.poly import MultiPoly

VARS = ("k", "n", "x")

small_fraction = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def polys(draw, vars=VARS, max_terms=4, max_deg=2):
    """Random sparse polynomial with small rational coefficients."""
    nterms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(nterms):
        e = tuple(draw(st.integers(0, max_deg)) for _ in vars)
        terms[e] = draw(small_fraction)
    return MultiPoly(vars, terms)


@st.composite
def nonzero_polys(draw, **kw):
    p = draw(polys(**kw))
    return p if not p.is_zero() else MultiPoly.const(draw(st.integers(1, 5)))


@st.composite
def points(draw, vars=VARS):
    return {v: draw(small_fraction) for v in vars}


@st.composite
def int_linforms(draw, vars=("n", "k")):
    """``a*n + b*k + c`` with small integer coefficients."""
    coeffs = {v: draw(st.integers(-2, 2)) for v in vars}
    const = draw(st.integers(-3, 3))
    return sum((c * lin(v) for v, c in coeffs.items()), lin(0)) + const


@st.composite
def hyperterms(draw):
    """Random proper hypergeometric term in ``n`` and ``k``."""
    t = HyperTerm(draw(st.sampled_from([1, 2, -1, Fraction(1, 3)])))
    for _ in range(draw(st.integers(1, 3))):
        kind = draw(st.sampled_from(["binomial", "factorial", "poch", "power", "sign", "poly"]))
        e = draw(st.sampled_from([1, 1, -1, 2]))
        if kind == "binomial":
            a = draw(st.sampled_from([lin("n"), lin("n") + 1, 2 * lin("n"), lin("n") + lin("k")]))
            b = draw(st.sampled_from([lin("k"), lin("k") + 1, lin("n") - lin("k")]))
            atom = binomial(a, b)
            e = abs(e)
        elif kind == "factorial":
            atom = factorial(draw(st.sampled_from([lin("k"), lin("n") + lin("k"), lin("n") + 1])))
            e = -abs(e)
        elif kind == "poch":
            base = draw(st.sampled_from([Fraction(1, 2), Fraction(3, 2), Fraction(1, 3)]))
            atom = poch(base, draw(st.sampled_from([lin("k"), lin("n")])))
        elif kind == "power":
            atom = power(draw(st.sampled_from([2, 3, Fraction(1, 2)])), draw(st.sampled_from([lin("k"), lin("n")])))
        elif kind == "sign":
            atom = sign(lin("k"))
            e = 1
        else:
            atom = polyfactor(MultiPoly.var("k") + draw(st.integers(1, 4)))
            e = 1
        t = t * atom ** e
    return t
