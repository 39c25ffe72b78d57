"""Hypergeometric terms: quotients, evaluation, support, normalization."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from strategies import hyperterms
from wzkit.errors import NotHypergeometricError, PoleError
from wzkit.hyperterm import (ONE_TERM, HyperTerm, Identity, binomial, divide_by_rhs, eval_exact, factorial,
                             lin, natural_support, poch, polyfactor, power, shift_quotient, sign, support_box)
from wzkit.oracle import exact_sum
from wzkit.poly import RatFunc, X

n, k = X("n"), X("k")
N, K = lin("n"), lin("k")
BINOM = binomial(N, K) / power(2, N)


def test_shift_quotient_examples():
    assert shift_quotient(BINOM, "n") == RatFunc(n + 1, 2 * (n + 1 - k))
    assert shift_quotient(BINOM, "k") == RatFunc(n - k, k + 1)
    assert shift_quotient(poch(Fraction(1, 2), K), "k") == RatFunc(k + Fraction(1, 2))


def test_shift_quotient_grid():
    rn, rk = shift_quotient(BINOM, "n"), shift_quotient(BINOM, "k")
    for nn in range(0, 8):
        for kk in range(0, nn + 1):
            p = {"n": nn, "k": kk}
            assert eval_exact(BINOM, {"n": nn + 1, "k": kk}) == rn.evaluate(p) * eval_exact(BINOM, p)
            if kk < nn:
                assert eval_exact(BINOM, {"n": nn, "k": kk + 1}) == rk.evaluate(p) * eval_exact(BINOM, p)


def test_eval_examples():
    assert eval_exact(binomial(4, 2), {}) == 6
    assert eval_exact(poch(Fraction(1, 2), 2), {}) == Fraction(3, 4)
    assert eval_exact(BINOM, {"n": 1, "k": 1}) == Fraction(1, 2)


def test_eval_support_convention():
    assert eval_exact(binomial(N, K), {"n": 3, "k": 5}) == 0
    assert eval_exact(binomial(N, K), {"n": 3, "k": -1}) == 0
    assert eval_exact(factorial(N - K) ** -1, {"n": 2, "k": 3}) == 0
    with pytest.raises(PoleError):
        eval_exact(factorial(N - K), {"n": 2, "k": 3})


def test_negative_top_binomial():
    # binomial(-1, k) = (-1)^k
    t = binomial(lin(-1), K)
    assert [eval_exact(t, {"k": j}) for j in range(5)] == [1, -1, 1, -1, 1]


def test_natural_support_examples():
    s = natural_support(binomial(N, K), "k")
    assert s.lower == lin(0) and s.upper == N
    assert natural_support(poch(-N, K), "k").upper == N
    assert natural_support(factorial(N - K) ** -1, "k").upper == N
    assert natural_support(power(2, K), "k").is_finite() is False


def test_support_with_possibly_negative_top():
    # binomial(k+n, n-k) is nonzero for every k < -n, where the top is negative
    t = binomial(K + N, N - K)
    s = natural_support(t, "k")
    assert s.lower is None and s.upper == N
    assert s.resolve({"n": 0})[0] is None
    assert eval_exact(t, {"n": 0, "k": -5}) != 0
    assert support_box([t], ("k",), {"n": 2}) is None
    # binomial(n-3, k) has an unbounded support while n < 3
    u = binomial(N - 3, K)
    assert natural_support(u, "k").is_finite() is False
    assert natural_support(u, "k").resolve({"n": 1}) == (0, None)
    assert natural_support(u, "k").resolve({"n": 5}) == (0, 2)


def test_guarded_bound_used_in_box():
    # the top n+k is nonnegative only once k >= 0 is known
    t = binomial(N, K) ** 2 * binomial(N + K, K) ** 2
    assert natural_support(t, "k").is_finite()
    assert support_box([t], ("k",), {"n": 4}) == [(0, 4)]
    assert support_box([binomial(N + K, K)], ("k",), {"n": 4}) is None


def test_divide_by_rhs_examples():
    i = Identity(binomial(N, K), (power(2, N),), ("k",))
    norm = divide_by_rhs(i)
    assert norm.summand == BINOM and norm.is_normalized
    one = Identity(BINOM, (ONE_TERM,), ("k",))
    assert divide_by_rhs(one) is one
    with pytest.raises(NotHypergeometricError):
        divide_by_rhs(Identity(BINOM, (power(2, N), ONE_TERM), ("k",)))


def test_divide_by_rhs_ramanujan():
    summand = (sign(K) * polyfactor(4 * k + 1) * poch(Fraction(1, 2), K) ** 2 * poch(-N, K)
               / (factorial(K) ** 2 * poch(Fraction(3, 2) + N, K)))
    rhs = poch(Fraction(3, 2), N) / factorial(N)
    norm = divide_by_rhs(Identity(summand, (rhs,), ("k",)))
    assert norm.is_normalized
    for m in range(6):
        assert exact_sum(norm.summand, m) == 1


@pytest.mark.parametrize("summand,rhs", [
    (binomial(N, K), power(2, N)),
    (binomial(N, K) ** 2, binomial(2 * N, N)),
    (polyfactor(k) * binomial(N, K), polyfactor(n + 1) * power(2, N)),
])
def test_divide_by_rhs_reproduces_ratio(summand, rhs):
    norm = divide_by_rhs(Identity(summand, (rhs,), ("k",)))
    for m in range(6):
        expected = exact_sum(summand, m) / eval_exact(rhs, {"n": m})
        assert exact_sum(norm.summand, m) == expected


def test_mul_ratfunc_closed_form_mate():
    R = RatFunc(k, 2 * (k - n - 1))
    G = BINOM.mul_ratfunc(R)
    for nn in range(0, 10):
        for kk in range(-2, nn + 4):
            g = eval_exact(G, {"n": nn, "k": kk})
            expected = -eval_exact(binomial(N, K - 1), {"n": nn, "k": kk}) / 2 ** (nn + 1)
            assert g == expected


def test_support_box():
    t = binomial(N, K)
    assert support_box([t], ["k"], {"n": 4}) == [(0, 4)]
    assert support_box([power(2, K)], ["k"], {"n": 4}) is None


def test_linform_rejects_bad_names():
    with pytest.raises(ValueError):
        lin("-n")


PROPS = settings(max_examples=200, deadline=None)


@PROPS
@given(hyperterms(), st.sampled_from(["n", "k"]), st.integers(0, 6), st.integers(-2, 6))
def test_shift_quotient_matches_evaluation(t, v, nn, kk):
    assume(v in t.variables)
    p = {"n": nn, "k": kk}
    q = dict(p)
    q[v] += 1
    try:
        here, there = eval_exact(t, p), eval_exact(t, q)
    except PoleError:
        assume(False)
    assume(here != 0)
    r = shift_quotient(t, v)
    assume(r.den.evaluate(p) != 0)
    assert there == r.evaluate(p) * here


@PROPS
@given(hyperterms(), st.integers(0, 6), st.integers(1, 8), st.booleans())
def test_natural_support_is_sound(t, nn, offset, below):
    assume("k" in t.variables)
    s = natural_support(t, "k")
    lo, hi = s.resolve({"n": nn})
    if below:
        assume(lo is not None)
        kk = lo - offset
    else:
        assume(hi is not None)
        kk = hi + offset
    assert eval_exact(t, {"n": nn, "k": kk}) == 0


@PROPS
@given(hyperterms(), st.integers(0, 6), st.integers(1, 8), st.booleans())
def test_support_box_is_sound(t, nn, offset, below):
    assume("k" in t.variables)
    box = support_box([t], ("k",), {"n": nn})
    assume(box is not None)
    lo, hi = box[0]
    kk = lo - offset if below else hi + offset
    assert eval_exact(t, {"n": nn, "k": kk}) == 0


@PROPS
@given(hyperterms(), hyperterms(), st.integers(0, 5), st.integers(0, 5))
def test_product_evaluates_to_product(a, b, nn, kk):
    p = {"n": nn, "k": kk}
    try:
        va, vb = eval_exact(a, p), eval_exact(b, p)
    except PoleError:
        assume(False)
    try:
        v = eval_exact(a * b, p)
    except PoleError:
        assume(False)
    assert v == va * vb


def test_hyperterm_constant_nonzero():
    with pytest.raises(ValueError):
        HyperTerm(0)
