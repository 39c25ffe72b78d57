"""Identity language: parsing, printing, conversion, error positions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wzkit.dsl import (format_expr, format_identity, identity_source, load_identity, parse_expression,
                       parse_identity, tokenize)
from wzkit.errors import DslError, DslSemanticError, DslSyntaxError
from wzkit.hyperterm import binomial, divide_by_rhs, lin, power
from wzkit.oracle import exact_sum, identity_values

BINOMIAL = "sum k: binomial(n,k) / 2^n == 1"
RAMANUJAN = ("sum k: (-1)^k * (4k+1) * poch(1/2,k)^2 * poch(-n,k) / (factorial(k)^2 * poch(3/2+n,k))"
             " == poch(3/2,n)/factorial(n)")
TRINOMIAL = ("sum k1 sum k2: factorial(n) / (factorial(k1) * factorial(k2) * factorial(n-k1-k2))"
             " * x^k1 * y^k2 * z^(n-k1-k2) == (x+y+z)^n")
EXAMPLES = [BINOMIAL, RAMANUJAN, TRINOMIAL,
            "sum k = 0..n: binomial(n,k) == 2^n",
            "sum k: k * binomial(n,k) == n * 2^(n-1)",
            "sum k: binomial(n,k) == 2^n + 1",
            "sum k = 0..n: 2^k == 2^(n+1) - 1",
            "sum k: (-1)^k * binomial(2n,n+k)^3 == factorial(3n) / factorial(n)^3"]


@pytest.mark.parametrize("src", EXAMPLES)
def test_round_trip(src):
    ast = parse_identity(src)
    again = parse_identity(format_identity(ast))
    assert again == ast
    assert format_identity(again) == format_identity(ast)


@pytest.mark.parametrize("src", EXAMPLES)
def test_display_is_valid_input(src):
    identity = load_identity(src)
    assert load_identity(identity_source(identity)) == identity


def test_binomial_identity():
    identity = load_identity(BINOMIAL)
    assert identity.summand == binomial(lin("n"), lin("k")) / power(2, lin("n"))
    assert identity.is_normalized and identity.sum_vars == ("k",)


def test_ramanujan_identity_at_one():
    identity = load_identity(RAMANUJAN)
    lhs, rhs = identity_values(identity, 1)
    assert lhs == rhs == Fraction(3, 2)
    assert exact_sum(divide_by_rhs(identity).summand, 1) == 1


def test_trinomial_has_parameters():
    identity = load_identity(TRINOMIAL)
    assert identity.params == ("x", "y", "z")
    assert identity.sum_vars == ("k1", "k2")


def test_nonlinear_factorial_argument():
    with pytest.raises(DslSemanticError) as info:
        load_identity("sum k: factorial(n*k)")
    assert "non-linear" in info.value.message
    assert (info.value.line, info.value.col) == (1, 19)


def test_unknown_variable():
    with pytest.raises(DslSemanticError) as info:
        load_identity("sum k: binomial(n, j) == 1")
    assert "j" in info.value.message


def test_unknown_function_is_semantic():
    with pytest.raises(DslSemanticError) as info:
        load_identity("sum k: gamma(k) == 1")
    assert info.value.col == 8


def test_parameter_in_factorial_rejected():
    with pytest.raises(DslSemanticError):
        load_identity("sum k: factorial(x + k) == 1")


@pytest.mark.parametrize("src,line,col", [
    ("sum k binomial(n,k) == 1", 1, 7),
    ("sum k: binomial(n,k) = 1", 1, 22),
    ("sum k: binomial(n,k\n) == ", 2, 6),
    ("sum k: (n + k == 1", 1, 15),
    ("sum k: k $ 2 == 1", 1, 10),
])
def test_syntax_error_positions(src, line, col):
    with pytest.raises(DslSyntaxError) as info:
        parse_identity(src)
    assert (info.value.line, info.value.col) == (line, col)
    assert f"line {line}, column {col}" in str(info.value)


def test_remarks_are_kept():
    src = "# remark: cited only\n# plain comment\n" + BINOMIAL
    ast = parse_identity(src)
    assert ast.remarks == ("cited only",)
    assert load_identity(src).remarks == ("cited only",)


def test_implicit_multiplication():
    assert format_expr(parse_expression("4k+1")) == format_expr(parse_expression("4*k + 1"))
    assert format_expr(parse_expression("2(n+1)")) == format_expr(parse_expression("2*(n+1)"))


def test_number_after_factor_is_an_error():
    with pytest.raises(DslSyntaxError):
        parse_expression("k 2")


def test_tokenize_positions():
    toks, remarks = tokenize("sum k:\n  k")
    pos = [(t.text, t.line, t.col) for t in toks if t.kind != "eof"]
    assert pos == [("sum", 1, 1), ("k", 1, 5), (":", 1, 6), ("k", 2, 3)]
    assert remarks == []


def test_deep_nesting_is_rejected_cleanly():
    with pytest.raises(DslError):
        parse_identity("sum k: " + "(" * 5000 + "k" + ")" * 5000 + " == 1")


def test_huge_exponent_rejected():
    with pytest.raises(DslError):
        load_identity("sum k: binomial(n,k)^100000 == 1")


ALPHABET = st.sampled_from(list("sumk n:=()*/+-^.,0123#\n") + ["binomial(", "factorial(", "poch(", "==", "sum ",
                                                               "..", "1/2", "x"])


@settings(max_examples=400, deadline=None)
@given(st.lists(ALPHABET, max_size=40).map("".join))
def test_parser_totality_structured(src):
    try:
        load_identity(src)
    except DslError as exc:
        assert exc.line >= 1 and exc.col >= 1


@settings(max_examples=300, deadline=None)
@given(st.text(max_size=60))
def test_parser_totality_arbitrary(src):
    try:
        load_identity(src)
    except DslError as exc:
        assert exc.line >= 1 and exc.col >= 1
