"""A small language for summation identities.

Example::

    # remark: Carlson's theorem justifies n = -1/2
    sum k: (-1)^k * (4k + 1) * poch(1/2, k)^2 * poch(-n, k)
           / (factorial(k)^2 * poch(3/2 + n, k))
        == poch(3/2, n) / factorial(n)

Grammar (informal)::

    identity  := sumclause+ ":" expr "==" expr
    sumclause := "sum" NAME ["=" expr ".." expr]
    expr      := term (("+" | "-") term)*
    term      := unary (("*" | "/") unary | <juxtaposition> unary)*
    unary     := "-" unary | power
    power     := primary ["^" unary]
    primary   := NUMBER | NAME | FUNC "(" expr ("," expr)* ")" | "(" expr ")"

``FUNC`` is one of ``binomial``, ``factorial``, ``poch``.  Juxtaposition
means multiplication (``4k``, ``2(n + 1)``).  The main variable is ``n``;
other names that are not summation variables are free parameters and may
only appear in polynomial factors and power bases.  Comment lines start with
``#``; a comment of the form ``# remark: text`` is kept as a remark.

Every rejection raises :class:`DslSyntaxError` or :class:`DslSemanticError`
with a line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple, Union

from .errors import DslError, DslSemanticError, DslSyntaxError, NotHypergeometricError, WZError
from .hyperterm import (
    HyperTerm,
    Identity,
    LinForm,
    binomial,
    factorial,
    poch,
    power,
    sign,
)
from .poly import MultiPoly

MAIN_VAR = "n"
FUNCTIONS = {"binomial": 2, "factorial": 1, "poch": 2}
KEYWORDS = {"sum"}
MAX_EXPONENT = 512
MAX_DEPTH = 200

Pos = Tuple[int, int]


# ---------------------------------------------------------------------------
# syntax tree


@dataclass(frozen=True)
class Num:
    value: int
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Call:
    func: str
    args: Tuple["Expr", ...]
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: "Expr"
    pos: Pos = field(default=(0, 0), compare=False)


Expr = Union[Num, Var, Call, Neg, BinOp, Pow]


@dataclass(frozen=True)
class SumClause:
    var: str
    lo: Optional[Expr] = None
    hi: Optional[Expr] = None
    pos: Pos = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class IdentityAst:
    sums: Tuple[SumClause, ...]
    summand: Expr
    rhs: Expr
    remarks: Tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# printing

_LEVEL = {"+": 1, "-": 1, "*": 2, "/": 2}


def _level(e: Expr) -> int:
    if isinstance(e, BinOp):
        return _LEVEL[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    return 5


def _wrap(e: Expr, min_level: int) -> str:
    s = format_expr(e)
    return f"({s})" if _level(e) < min_level else s


def format_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}(" + ", ".join(format_expr(a) for a in e.args) + ")"
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, 3)
    if isinstance(e, Pow):
        return _wrap(e.base, 5) + "^" + _wrap(e.exponent, 3)
    if isinstance(e, BinOp):
        lvl = _LEVEL[e.op]
        left = _wrap(e.left, lvl)
        right = _wrap(e.right, lvl + 1)
        if lvl == 1:
            return f"{left} {e.op} {right}"
        return f"{left}{e.op}{right}"
    raise TypeError(e)


def format_identity(ast: IdentityAst) -> str:
    lines = [f"# remark: {r}" for r in ast.remarks]
    heads = []
    for s in ast.sums:
        if s.lo is None:
            heads.append(f"sum {s.var}")
        else:
            heads.append(f"sum {s.var} = {format_expr(s.lo)}..{format_expr(s.hi)}")
    lines.append(" ".join(heads) + ": " + format_expr(ast.summand) + " == " + format_expr(ast.rhs))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# tokens

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>==|\.\.|[-+*/^(),:=])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int
    glued: bool = False  # no whitespace before this token


def tokenize(src: str) -> Tuple[List[Token], List[str]]:
    tokens: List[Token] = []
    remarks: List[str] = []
    line, col, i = 1, 1, 0
    glued = False
    while i < len(src):
        m = _TOKEN.match(src, i)
        if not m:
            raise DslSyntaxError(f"unexpected character {src[i]!r}", line, col)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line, col = line + 1, 1
            glued = False
        elif kind in ("ws", "comment"):
            if kind == "comment":
                body = text[1:].strip()
                if body.lower().startswith("remark:"):
                    remarks.append(body[len("remark:"):].strip())
            col += len(text)
            glued = False
        else:
            tokens.append(Token(kind, text, line, col, glued))
            col += len(text)
            glued = True
        i = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens, remarks


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, src: str):
        self.tokens, self.remarks = tokenize(src)
        self.i = 0
        self.depth = 0
        self.declared: List[str] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def expect(self, text: str, what: Optional[str] = None) -> Token:
        if not self.at(text):
            self.error(f"expected {what or repr(text)}, found {self.describe(self.tok)}")
        return self.advance()

    def describe(self, t: Token) -> str:
        return "end of input" if t.kind == "eof" else repr(t.text)

    def error(self, msg: str, t: Optional[Token] = None):
        t = t or self.tok
        raise DslSyntaxError(msg, t.line, t.col)

    def semantic(self, msg: str, pos: Pos):
        raise DslSemanticError(msg, *pos)

    # -- grammar ----------------------------------------------------------------
    def identity(self) -> IdentityAst:
        sums = []
        while self.at("sum"):
            sums.append(self.sum_clause())
        if not sums:
            self.error(f"expected 'sum', found {self.describe(self.tok)}")
        self.expect(":")
        summand = self.expr()
        check_term(summand, self.declared)
        self.expect("==", "'=='")
        rhs = self.expr()
        check_term(rhs, self.declared, rhs=True)
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.describe(self.tok)} after the identity")
        return IdentityAst(tuple(sums), summand, rhs, tuple(self.remarks))

    def sum_clause(self) -> SumClause:
        t = self.expect("sum")
        v = self.tok
        if v.kind != "name" or v.text in FUNCTIONS or v.text in KEYWORDS:
            self.error(f"expected a summation variable, found {self.describe(v)}")
        self.advance()
        if v.text == MAIN_VAR:
            self.semantic(f"'{MAIN_VAR}' is the main variable and cannot be summed over", (v.line, v.col))
        if v.text in self.declared:
            self.semantic(f"summation variable '{v.text}' declared twice", (v.line, v.col))
        lo = hi = None
        if self.at("="):
            self.advance()
            lo = self.expr()
            self.expect("..", "'..'")
            hi = self.expr()
            for b in (lo, hi):
                to_linform(b, self.declared + [MAIN_VAR], "summation bound", integer=True)
        self.declared.append(v.text)
        return SumClause(v.text, lo, hi, (t.line, t.col))

    def expr(self) -> Expr:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.error("expression nested too deeply")
        try:
            left = self.term()
            while self.at("+") or self.at("-"):
                op = self.advance()
                right = self.term()
                left = BinOp(op.text, left, right, (op.line, op.col))
            return left
        finally:
            self.depth -= 1

    def _starts_primary(self) -> bool:
        t = self.tok
        return (t.kind == "name" and t.text not in KEYWORDS) or t.kind == "num" or self.at("(")

    def term(self) -> Expr:
        left = self.unary()
        while True:
            if self.at("*") or self.at("/"):
                op = self.advance()
                right = self.unary()
                left = BinOp(op.text, left, right, (op.line, op.col))
            elif self._starts_primary():
                if self.tok.kind == "num":
                    self.error("a number cannot follow another factor; use '*'")
                t = self.tok
                right = self.unary()
                left = BinOp("*", left, right, (t.line, t.col))
            else:
                return left

    def unary(self) -> Expr:
        if self.at("-"):
            t = self.advance()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                self.error("expression nested too deeply")
            try:
                return Neg(self.unary(), (t.line, t.col))
            finally:
                self.depth -= 1
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.at("^"):
            t = self.advance()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                self.error("expression nested too deeply")
            try:
                exp = self.unary()
            finally:
                self.depth -= 1
            return Pow(base, exp, (t.line, t.col))
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Num(int(t.text), (t.line, t.col))
        if t.kind == "name" and t.text not in KEYWORDS:
            self.advance()
            if t.text in FUNCTIONS:
                return self.call(t)
            if self.at("(") and self.tok.glued:
                self.semantic(f"unknown function '{t.text}'", (t.line, t.col))
            return Var(t.text, (t.line, t.col))
        if self.at("("):
            self.advance()
            e = self.expr()
            self.expect(")", "')'")
            return e
        self.error(f"expected a number, name or '(', found {self.describe(t)}")

    def call(self, name: Token) -> Call:
        self.expect("(", f"'(' after {name.text}")
        args = [self.expr()]
        while self.at(","):
            self.advance()
            args.append(self.expr())
        self.expect(")", "')'")
        want = FUNCTIONS[name.text]
        if len(args) != want:
            self.semantic(f"{name.text} takes {want} argument(s), got {len(args)}", (name.line, name.col))
        c = Call(name.text, tuple(args), (name.line, name.col))
        allowed = self.declared + [MAIN_VAR]
        if name.text == "poch":
            to_linform(args[0], allowed, "Pochhammer base", integer=False)
            to_linform(args[1], allowed, "Pochhammer length", integer=True)
        else:
            for a in args:
                to_linform(a, allowed, f"{name.text} argument", integer=True)
        return c


def parse_identity(src: str) -> IdentityAst:
    """Parse identity source text; raises :class:`DslError` on bad input."""
    try:
        return _Parser(src).identity()
    except DslError:
        raise
    except RecursionError:
        raise DslSyntaxError("expression nested too deeply", 1, 1) from None


def parse_expression(src: str) -> Expr:
    p = _Parser(src)
    try:
        e = p.expr()
    except RecursionError:
        raise DslSyntaxError("expression nested too deeply", 1, 1) from None
    if p.tok.kind != "eof":
        p.error(f"unexpected {p.describe(p.tok)}")
    return e


def parse_polynomial(src: str) -> MultiPoly:
    e = parse_expression(src)
    p = to_poly(e)
    if p is None:
        raise DslSemanticError("not a polynomial", *e.pos)
    return p


# ---------------------------------------------------------------------------
# semantics


def _int_const(e: Expr) -> Optional[int]:
    p = to_poly(e)
    if p is None or not p.is_constant():
        return None
    v = p.constant_value()
    return v.numerator if v.denominator == 1 else None


def to_poly(e: Expr) -> Optional[MultiPoly]:
    """The polynomial denoted by ``e``, or ``None`` if it is not one."""
    if isinstance(e, Num):
        return MultiPoly.const(e.value)
    if isinstance(e, Var):
        return MultiPoly.var(e.name)
    if isinstance(e, Neg):
        p = to_poly(e.operand)
        return None if p is None else -p
    if isinstance(e, BinOp):
        a, b = to_poly(e.left), to_poly(e.right)
        if a is None or b is None:
            return None
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b.is_zero():
            raise DslSemanticError("division by zero", *e.pos)
        return a.scale(1 / b.constant_value()) if b.is_constant() else None
    if isinstance(e, Pow):
        k = _int_const(e.exponent)
        if k is None or k < 0:
            return None
        if k > MAX_EXPONENT:
            raise DslSemanticError(f"exponent {k} exceeds the limit {MAX_EXPONENT}", *e.pos)
        b = to_poly(e.base)
        return None if b is None else b ** k
    return None


def to_linform(e: Expr, allowed, what: str, integer: bool) -> LinForm:
    p = to_poly(e)
    if p is None or p.degree() > 1:
        raise DslSemanticError(f"non-linear {what}: {format_expr(e)}", *e.pos)
    unknown = [v for v in p.vars if v not in allowed]
    if unknown:
        raise DslSemanticError(
            f"unknown variable '{unknown[0]}' in {what}; only {', '.join(allowed)} may appear here", *e.pos)
    try:
        L = LinForm.from_poly(p)
    except NotHypergeometricError:
        raise DslSemanticError(f"{what} needs integer coefficients: {format_expr(e)}", *e.pos) from None
    if integer and not L.has_integer_const():
        raise DslSemanticError(f"{what} needs an integer constant: {format_expr(e)}", *e.pos)
    return L


def check_term(e: Expr, declared, rhs: bool = False):
    """Raise a semantic error unless ``e`` denotes a hypergeometric term
    (or, for the right-hand side, a sum of them)."""
    build_terms(e, declared) if rhs else build_term(e, declared)


def build_term(e: Expr, declared) -> HyperTerm:
    allowed = list(declared) + [MAIN_VAR]
    p = to_poly(e)
    if p is not None:
        if p.is_zero():
            raise DslSemanticError("the zero polynomial is not a hypergeometric term", *e.pos)
        c = p.content() * (1 if p.leading_coefficient() > 0 else -1)
        prim = p.scale(1 / c)
        return HyperTerm(c) if prim.is_constant() else HyperTerm.from_poly(prim) * HyperTerm(c)
    if isinstance(e, Neg):
        return -build_term(e.operand, declared)
    if isinstance(e, BinOp):
        if e.op in "+-":
            raise DslSemanticError(
                "a sum of non-polynomial terms is not a hypergeometric term", *e.pos)
        a, b = build_term(e.left, declared), build_term(e.right, declared)
        return a * b if e.op == "*" else a / b
    if isinstance(e, Call):
        if e.func == "factorial":
            return factorial(to_linform(e.args[0], allowed, "factorial argument", True))
        if e.func == "binomial":
            return binomial(to_linform(e.args[0], allowed, "binomial argument", True),
                            to_linform(e.args[1], allowed, "binomial argument", True))
        return poch(to_linform(e.args[0], allowed, "Pochhammer base", False),
                    to_linform(e.args[1], allowed, "Pochhammer length", True))
    if isinstance(e, Pow):
        k = _int_const(e.exponent)
        if k is not None:
            if abs(k) > MAX_EXPONENT:
                raise DslSemanticError(f"exponent {k} exceeds the limit {MAX_EXPONENT}", *e.pos)
            return build_term(e.base, declared) ** k
        L = to_linform(e.exponent, allowed, "exponent", integer=True)
        base = to_poly(e.base)
        if base is None:
            raise DslSemanticError("a symbolic exponent needs a polynomial base", *e.base.pos)
        if base.is_zero():
            raise DslSemanticError("zero base with a symbolic exponent", *e.base.pos)
        clash = set(base.vars) & (set(L.vars))
        if clash:
            raise DslSemanticError(
                f"base and exponent share the variable '{sorted(clash)[0]}'", *e.pos)
        if set(base.vars) & set(allowed):
            raise DslSemanticError(
                "a power base may not contain the main or summation variables", *e.base.pos)
        if base.is_constant() and base.constant_value() == -1:
            return sign(L)
        return power(base, L)
    raise DslSemanticError("not a hypergeometric term", *getattr(e, "pos", (1, 1)))


def build_terms(e: Expr, declared) -> List[HyperTerm]:
    """Split a right-hand side at top-level ``+``/``-`` into terms."""
    if to_poly(e) is None and isinstance(e, BinOp) and e.op in "+-":
        left = build_terms(e.left, declared)
        right = build_terms(e.right, declared)
        return left + (right if e.op == "+" else [-t for t in right])
    return [build_term(e, declared)]


def to_identity(ast: IdentityAst) -> Identity:
    declared = [s.var for s in ast.sums]
    try:
        summand = build_term(ast.summand, declared)
        rhs = build_terms(ast.rhs, [])
        ranges = []
        for i, s in enumerate(ast.sums):
            if s.lo is None:
                ranges.append(None)
            else:
                allowed = declared[:i] + [MAIN_VAR]
                ranges.append((to_linform(s.lo, allowed, "summation bound", True),
                               to_linform(s.hi, allowed, "summation bound", True)))
    except DslError:
        raise
    except (WZError, ValueError) as exc:
        raise DslSemanticError(str(exc), *ast.summand.pos) from None
    bad = [v for t in rhs for v in t.variables if v in declared]
    if bad:
        raise DslSemanticError(f"right-hand side uses summation variable '{bad[0]}'", *ast.rhs.pos)
    return Identity(summand, tuple(rhs), tuple(declared), tuple(ranges), MAIN_VAR, ast.remarks)


def load_identity(src: str) -> Identity:
    """Parse and convert in one step."""
    ast = parse_identity(src)
    try:
        return to_identity(ast)
    except DslError:
        raise
    except Exception as exc:  # totality: never leak an internal error
        raise DslSemanticError(f"could not interpret the identity: {exc}", *ast.summand.pos) from None


def identity_source(identity: Identity) -> str:
    """DSL text for an :class:`Identity` (display form is valid input)."""
    lines = [f"# remark: {r}" for r in identity.remarks]
    lines.append(identity.display())
    return "\n".join(lines) + "\n"

