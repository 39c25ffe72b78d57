"""Brute-force oracles and the hand-proof demos."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wzkit.errors import SupportError, TruncationError
from wzkit.hyperterm import binomial, factorial, lin, poch, polyfactor, power, sign
from wzkit.oracle import (QSeries, ahlgren_ono_eval, apery, beukers_check, descent_chain, eta_product, exact_sum,
                          harmonic, parable_check, sqrt2_descent, sqrt2_invariant_symbolic)
from wzkit.poly import X
from wzkit.telescoper import zeilberger

N, K = lin("n"), lin("k")
k = X("k")


def _naive_eta(order):
    """Untruncated expansion of the finite product, cut at the end."""
    poly = [1]
    for step in (2, 4):
        m = 1
        while step * m <= order:
            for _ in range(4):
                new = [0] * (len(poly) + step * m)
                for i, c in enumerate(poly):
                    new[i] += c
                    new[i + step * m] -= c
                poly = new
            m += 1
    shifted = [0] + poly
    return (shifted + [0] * (order + 1))[: order + 1]


def test_exact_sum_examples():
    assert exact_sum(binomial(3, K), 3, sum_vars=("k",)) == 8
    ram = (sign(K) * polyfactor(4 * k + 1) * poch(Fraction(1, 2), K) ** 2 * poch(-N, K)
           / (factorial(K) ** 2 * poch(Fraction(3, 2) + N, K)))
    assert exact_sum(ram, 1) == Fraction(3, 2)
    tri = (factorial(N) / (factorial(lin("k1")) * factorial(lin("k2")) * factorial(N - lin("k1") - lin("k2")))
           * power(X("x"), lin("k1")) * power(X("y"), lin("k2")) * power(X("z"), N - lin("k1") - lin("k2")))
    assert exact_sum(tri, 2, sum_vars=("k1", "k2"), params={"x": 1, "y": 1, "z": 1}) == 9


def test_exact_sum_needs_finite_range():
    with pytest.raises(SupportError):
        exact_sum(power(2, K), 3)
    assert exact_sum(power(2, K), 3, ranges=((lin(0), N),)) == 15


def test_harmonic():
    assert harmonic(0) == 0
    assert harmonic(4) == Fraction(25, 12)


def test_ahlgren_ono_small():
    assert ahlgren_ono_eval(1) == 0
    assert ahlgren_ono_eval(2) == 0


def test_ahlgren_ono_to_50():
    assert all(ahlgren_ono_eval(m) == 0 for m in range(1, 51))


def test_apery_values():
    assert [apery(m) for m in range(4)] == [1, 5, 73, 1445]


def test_apery_satisfies_recurrence():
    rec = zeilberger(binomial(N, K) ** 2 * binomial(N + K, K) ** 2)
    vals = [Fraction(apery(m)) for m in range(51)]
    assert all(v == 0 for v in rec.apply(vals))


def test_eta_prefix():
    s = eta_product(20)
    assert [s[i] for i in range(8)] == [0, 1, 0, -4, 0, -2, 0, 24]
    assert str(eta_product(7)) == "q - 4*q^3 - 2*q^5 + 24*q^7 + O(q^8)"


@pytest.mark.parametrize("order", [0, 1, 5, 12, 20, 41])
def test_eta_matches_naive(order):
    assert list(eta_product(order).coeffs) == _naive_eta(order)


def test_eta_even_coefficients_vanish():
    s = eta_product(30)
    assert all(s[i] == 0 for i in range(0, 31, 2))


def test_truncation_is_explicit():
    s = eta_product(10)
    with pytest.raises(TruncationError):
        s[11]


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-5, 5), min_size=1, max_size=8), min_size=3, max_size=3),
       st.integers(0, 10))
def test_qseries_product_order_independent(rows, order):
    a, b, c = (QSeries.from_terms(dict(enumerate(r)), order) for r in rows)
    assert ((a * b) * c).coeffs == (a * (b * c)).coeffs == ((c * a) * b).coeffs


def test_beukers_examples():
    r3 = beukers_check(3, 20)
    assert (r3.A_val, r3.a_val, r3.congruent) == (5, -4, True)
    r5 = beukers_check(5, 20)
    assert (r5.A_val, r5.a_val, r5.congruent) == (73, -2, True)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_beukers_primes(p):
    assert beukers_check(p, 20).congruent


def test_beukers_errors():
    with pytest.raises(TruncationError):
        beukers_check(13, 11)
    with pytest.raises(ValueError):
        beukers_check(9, 20)


def test_descent_example():
    s = sqrt2_descent(3, 2)
    assert (s.a, s.b) == (1, 1)
    assert s.before == 1 and s.after == -1 and s.invariant_ok
    assert 1 - 2 * 1 != 0


def test_descent_chain_terminates():
    chain = descent_chain(17, 12)
    assert all(s.invariant_ok for s in chain)
    assert [s.A for s in chain] == sorted((s.A for s in chain), reverse=True)
    assert chain[-1].a < 1 or chain[-1].b < 1


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_descent_invariant(A, B):
    s = sqrt2_descent(A, B)
    assert s.a**2 - 2 * s.b**2 == -(A**2 - 2 * B**2)


def test_descent_invariant_symbolic():
    assert sqrt2_invariant_symbolic()


def test_descent_rejects_nonpositive():
    with pytest.raises(ValueError):
        sqrt2_descent(0, 1)


@pytest.mark.parametrize("m", range(1, 9))
def test_parable(m):
    assert parable_check(m)
