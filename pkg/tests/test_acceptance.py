"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
Each criterion checks both its exact results and its time limit.
"""

import sys
import time
from fractions import Fraction
from math import factorial as fact
from pathlib import Path

import pytest

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE))

import test_poly  # noqa: E402
import test_telescoper  # noqa: E402
from wzkit.certifier import Certificate, certify_identity, verify_wz_rational  # noqa: E402
from wzkit.dsl import load_identity  # noqa: E402
from wzkit.hyperterm import binomial, divide_by_rhs, factorial, lin, power  # noqa: E402
from wzkit.multiwz import constant_term, find_multi_ansatz, verify_multi  # noqa: E402
from wzkit.oracle import (ahlgren_ono_eval, apery, beukers_check, eta_product, exact_sum, identity_values,  # noqa: E402
                          parable_check, sqrt2_invariant_symbolic)
from wzkit.poly import RatFunc, X  # noqa: E402
from wzkit.prover import prove_identity  # noqa: E402
from wzkit.telescoper import zeilberger  # noqa: E402

CORPUS = HERE.parent / "identities"
n, k = X("n"), X("k")
N, K, K1, K2 = lin("n"), lin("k"), lin("k1"), lin("k2")
ORDER = ("n", "k")

BINOMIAL = "sum k: binomial(n,k) / 2^n == 1"
RAMANUJAN = ("sum k: (-1)^k * (4k+1) * poch(1/2,k)^2 * poch(-n,k) / (factorial(k)^2 * poch(3/2+n,k))"
             " == poch(3/2,n)/factorial(n)")
R_RAMANUJAN = RatFunc(-2 * k**2, (n - k + 1) * (4 * k + 1))
TRINOMIAL = (factorial(N) / (factorial(K1) * factorial(K2) * factorial(N - K1 - K2))
             * power(X("x"), K1) * power(X("y"), K2) * power(X("z"), N - K1 - K2)
             / power(X("x") + X("y") + X("z"), N))


def criterion_1():
    identity = load_identity(BINOMIAL)
    report, cert = prove_identity(identity)
    symbolic = verify_wz_rational(divide_by_rhs(identity).summand, cert)[0]
    oracle = all(lhs == rhs == 1 for lhs, rhs in (identity_values(identity, m) for m in range(21)))
    ok = report.proved and symbolic and oracle
    return ok, 1.0, f"verdict {report.verdict}, certificate {cert.rs[0].display(ORDER)}"


def criterion_2():
    identity = load_identity(RAMANUJAN)
    given = certify_identity(identity, Certificate((R_RAMANUJAN,)))
    report, cert = prove_identity(identity)
    same = cert.rs[0] == R_RAMANUJAN and cert.convention == given.convention
    # (3/2)_n / n! = (2n+1)! / (4^n n!^2)
    oracle = all(identity_values(identity, m) == (closed, closed)
                 for m, closed in ((m, Fraction(fact(2 * m + 1), 4**m * fact(m) ** 2)) for m in range(16)))
    ok = given.proved and report.proved and same and oracle
    return ok, 2.0, f"given certificate {given.verdict} under {given.convention}, found {cert.rs[0].display(ORDER)}"


def criterion_3():
    ok = all(ahlgren_ono_eval(m) == 0 for m in range(1, 51))
    return ok, 2.0, "sum vanishes for n = 1..50"


def criterion_4():
    prefix = [eta_product(20)[i] for i in range(8)]
    reports = [beukers_check(p, 20) for p in (3, 5, 7, 11, 13)]
    ok = prefix == [0, 1, 0, -4, 0, -2, 0, 24] and all(r.congruent for r in reports)
    return ok, 5.0, "; ".join(f"p={r.p}: A={r.A_val}, a={r.a_val}" for r in reports)


def criterion_5():
    grid = all(constant_term(r, a) == Fraction(fact(r * a), fact(a) ** r) for r in (1, 2, 3) for a in (0, 1, 2))
    start = time.perf_counter()
    top = constant_term(3, 2) == 90
    elapsed = time.perf_counter() - start
    return grid and top and elapsed < 30, 30.0, f"(3,2) alone took {elapsed:.2f} s"


def criterion_6():
    cert = find_multi_ansatz(TRINOMIAL, 3, ("k1", "k2"))
    verified = cert is not None and verify_multi(TRINOMIAL, cert, ("k1", "k2"))[0]
    sums = all(exact_sum(TRINOMIAL, m, sum_vars=("k1", "k2"), params=dict(zip("xyz", xyz))) == 1
               for xyz in ((1, 2, 3), (1, 1, 1)) for m in range(9))
    return verified and sums, 60.0, f"certificate found: {cert is not None}"


def criterion_7():
    rec = zeilberger(binomial(N, K) ** 2 * binomial(N + K, K) ** 2)
    values = [Fraction(apery(m)) for m in range(51)]
    ok = rec.order == 2 and all(v == 0 for v in rec.apply(values)) and values[1:3] == [5, 73]
    return ok, 30.0, f"order {rec.order}"


def criterion_8():
    test_telescoper.test_gosper_randomized_completeness()
    for prop in (test_poly.test_ring_laws, test_poly.test_gcd_divides,
                 test_poly.test_normalize_cancels_common_factor, test_poly.test_evaluation_homomorphism):
        prop()
    ok = all(parable_check(m) for m in range(1, 9)) and sqrt2_invariant_symbolic()
    return ok, 60.0, "gosper 100/100, algebra properties x500, parable 1..8, descent invariant"


def criterion_9():
    bad = []
    proved = 0
    for path in sorted(CORPUS.glob("*.wz")):
        identity = load_identity(path.read_text())
        report, _ = prove_identity(identity)
        if not report.proved:
            continue
        proved += 1
        params = {v: Fraction(i + 2, i + 1) for i, v in enumerate(identity.params)}
        for m in range(report.base_index, 21):
            lhs, rhs = identity_values(identity, m, params)
            if lhs != rhs:
                bad.append(f"{path.stem} at n = {m}")
    return not bad, None, f"{proved} proved, {len(bad)} disagreements"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


def run_criterion(index):
    start = time.perf_counter()
    try:
        ok, limit, detail = CRITERIA[index - 1]()
    except AssertionError as exc:
        ok, limit, detail = False, None, f"assertion failed: {exc}"
    elapsed = time.perf_counter() - start
    timely = limit is None or elapsed < limit
    status = "PASS" if ok and timely else "FAIL"
    budget = "" if limit is None else f" (limit {limit:g} s)"
    line = f"{status} criterion {index}: {detail}; {elapsed:.2f} s{budget}"
    return ok and timely, line


@pytest.mark.parametrize("index", range(1, len(CRITERIA) + 1))
def test_criterion(index, capsys):
    ok, line = run_criterion(index)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(i) for i in range(1, len(CRITERIA) + 1)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
