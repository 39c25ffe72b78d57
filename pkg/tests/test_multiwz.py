"""Multi-sum certificates and Laurent constant terms."""

from fractions import Fraction
from itertools import permutations
from math import factorial as fact

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wzkit.certifier import Certificate, verify_wz_rational
from wzkit.errors import BudgetExceededError
from wzkit.hyperterm import binomial, factorial, lin, power
from wzkit.multiwz import (LaurentPoly, MultiCert, constant_term, denominator_pool, dyson_product,
                           find_multi_ansatz, verify_multi)
from wzkit.oracle import exact_sum
from wzkit.poly import MultiPoly, RatFunc, X
from wzkit.telescoper import wz_certificate_find

n, k, k1, k2 = X("n"), X("k"), X("k1"), X("k2")
N, K, K1, K2 = lin("n"), lin("k"), lin("k1"), lin("k2")
x, y, z = X("x"), X("y"), X("z")

TRINOMIAL = (factorial(N) / (factorial(K1) * factorial(K2) * factorial(N - K1 - K2))
             * power(x, K1) * power(y, K2) * power(z, N - K1 - K2) / power(x + y + z, N))
BINOM = binomial(N, K) / power(2, N)


@pytest.fixture(scope="module")
def trinomial_cert():
    return find_multi_ansatz(TRINOMIAL, 3, ("k1", "k2"))


def test_trinomial_found_and_verified(trinomial_cert):
    assert trinomial_cert is not None and trinomial_cert.r == 2
    ok, residual = verify_multi(TRINOMIAL, trinomial_cert, ("k1", "k2"))
    assert ok and residual.is_zero()


def test_trinomial_degree_two_bound_suffices():
    cert = find_multi_ansatz(TRINOMIAL, 2, ("k1", "k2"))
    assert cert is not None and verify_multi(TRINOMIAL, cert, ("k1", "k2"))[0]


def test_trinomial_degree_zero_has_none():
    assert find_multi_ansatz(TRINOMIAL, 0, ("k1", "k2")) is None


@pytest.mark.parametrize("xyz", [(1, 2, 3), (1, 1, 1)])
def test_trinomial_sum_is_one(xyz):
    params = dict(zip("xyz", xyz))
    for m in range(9):
        assert exact_sum(TRINOMIAL, m, sum_vars=("k1", "k2"), params=params) == 1


def test_r1_reduces_to_single_sum():
    R = wz_certificate_find(BINOM).rs[0]
    assert verify_multi(BINOM, MultiCert((R,)), ("k",))[0]
    assert verify_wz_rational(BINOM, Certificate((R,)))[0]
    found = find_multi_ansatz(BINOM, 1, ("k",))
    assert found is not None and found.rs[0] == R


def test_zero_certificates_fail():
    ok, residual = verify_multi(TRINOMIAL, MultiCert((RatFunc(0), RatFunc(0))), ("k1", "k2"))
    assert not ok and not residual.is_zero()


def test_compact_support_sum_constant(trinomial_cert):
    # verify_multi passed and the summand has compact support: the sum is constant
    params = {"x": 2, "y": Fraction(1, 3), "z": 5}
    values = {exact_sum(TRINOMIAL, m, sum_vars=("k1", "k2"), params=params) for m in range(7)}
    assert values == {1}


def test_denominator_pool_mentions_shift_structure():
    pool = denominator_pool(TRINOMIAL, ("k1", "k2"))
    assert pool and all(p.degree() == 1 for p in pool)
    assert any("n" in p.vars for p in pool)


@pytest.mark.parametrize("r,a", [(r, a) for r in (1, 2, 3) for a in (0, 1, 2)])
def test_dyson(r, a):
    assert constant_term(r, a) == Fraction(fact(r * a), fact(a) ** r)


def test_dyson_small_expansion():
    p = dyson_product(2, 1)
    assert p.coefficient((0, 0)) == 2
    assert p.coefficient((1, -1)) == -1 and p.coefficient((-1, 1)) == -1
    assert len(p.terms) == 3


def test_dyson_single_variable():
    for a in range(5):
        assert constant_term(1, a) == 1


def test_budget_guard():
    with pytest.raises(BudgetExceededError) as info:
        constant_term(3, 2, budget=100)
    assert info.value.needed == 5**3 * 9 and info.value.budget == 100
    assert "budget" in str(info.value)


def test_dyson_symmetry():
    p = dyson_product(3, 1)
    for perm in permutations(range(3)):
        assert p.permuted(perm) == p


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 2), st.integers(1, 3), st.integers(0, 2))
def test_laurent_product_of_constant_terms(r1, a1, r2, a2):
    # constant terms of a product with disjoint variables multiply
    p = dyson_product(r1, a1)
    q = dyson_product(r2, a2)
    pad_p = LaurentPoly(r1 + r2, {e + (0,) * r2: c for e, c in p.terms.items()})
    pad_q = LaurentPoly(r1 + r2, {(0,) * r1 + e: c for e, c in q.terms.items()})
    assert (pad_p * pad_q).constant_term() == p.constant_term() * q.constant_term()


def test_laurent_drops_zero_coefficients():
    p = LaurentPoly(1, {(1,): 1, (-1,): 0})
    assert p.terms == {(1,): 1}
    assert p * LaurentPoly.one(1) == p
