"""Fraction-free linear algebra over polynomial rings.

Matrices are lists of rows of :class:`MultiPoly`.  Elimination never leaves
the polynomial ring: every division performed is exact (Bareiss), and after
reduction all pivot entries equal a common polynomial ``d``.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .poly import ONE, ZERO, MultiPoly, RatFunc

Matrix = List[List[MultiPoly]]


def _pivot_key(p: MultiPoly):
    return (len(p.terms), p.degree())


def ff_gauss_jordan(rows: Sequence[Sequence[MultiPoly]]) -> Tuple[Matrix, List[int], MultiPoly]:
    """Fraction-free Gauss-Jordan elimination.

    Returns ``(reduced, pivot_columns, d)`` where row ``i`` of ``reduced`` has
    entry ``d`` in column ``pivot_columns[i]`` and zeros in every other pivot
    column.  Rows beyond ``len(pivot_columns)`` are zero.
    """
    a = [list(r) for r in rows if any(not x.is_zero() for x in r)]
    if not a:
        return [], [], ONE
    ncols = len(a[0])
    prev = ONE
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(a):
            break
        cands = [i for i in range(r, len(a)) if not a[i][c].is_zero()]
        if not cands:
            continue
        best = min(cands, key=lambda i: _pivot_key(a[i][c]))
        a[r], a[best] = a[best], a[r]
        p = a[r][c]
        prow = a[r]
        for i in range(len(a)):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f.is_zero():
                if p != prev:
                    a[i] = [(p * x).exact_div(prev) if not x.is_zero() else x for x in row]
                continue
            a[i] = [
                (p * x - f * y).exact_div(prev) if not (x.is_zero() and y.is_zero()) else ZERO
                for x, y in zip(row, prow)
            ]
        prev = p
        pivots.append(c)
        r += 1
    reduced = a[:r]
    return reduced, pivots, prev


def nullspace(rows: Sequence[Sequence[MultiPoly]], ncols: Optional[int] = None) -> List[List[MultiPoly]]:
    """Polynomial basis of the right kernel, one vector per free column."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    reduced, pivots, d = ff_gauss_jordan(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = d
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence[MultiPoly]], rhs: Sequence[MultiPoly]) -> Optional[List[RatFunc]]:
    """One solution of ``A x = b`` over the fraction field, free unknowns set to 0.

    Returns ``None`` when the system is inconsistent.
    """
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    reduced, pivots, d = ff_gauss_jordan(aug)
    if ncols in pivots:
        return None
    x = [RatFunc(ZERO)] * ncols
    for row, pc in zip(reduced, pivots):
        x[pc] = RatFunc(row[ncols], d)
    return x


def _echelon_mod(rows: List[List[int]], p: int):
    """Pivots ``(original_row, column)`` of a row echelon form modulo ``p``."""
    a = [list(r) for r in rows]
    origin = list(range(len(a)))
    ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        origin[r], origin[piv] = origin[piv], origin[r]
        inv = pow(a[r][c], -1, p)
        for i in range(r + 1, len(a)):
            if a[i][c]:
                f = a[i][c] * inv % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        pivots.append((origin[r], c))
        r += 1
    return pivots


def solve_guided(rows: Sequence[Sequence[MultiPoly]], rhs: Sequence[MultiPoly], point,
                 p: int = 2**61 - 1) -> Optional[List[RatFunc]]:
    """Like :func:`solve`, but first picks independent rows and pivot columns
    from a specialization modulo ``p`` and solves only that square subsystem.

    The result satisfies the full system whenever the specialization has the
    generic rank; callers must verify it.  ``None`` means the specialized
    system is inconsistent.
    """
    def red(x: MultiPoly) -> int:
        v = x.evaluate(point) if not x.is_constant() else x.constant_value()
        return v.numerator * pow(v.denominator, -1, p) % p

    ncols = len(rows[0]) if rows else 0
    aug = [[red(x) for x in r] + [red(b)] for r, b in zip(rows, rhs)]
    pivots = _echelon_mod(aug, p)
    if any(c == ncols for _, c in pivots):
        return None
    sel_rows = [i for i, _ in pivots]
    sel_cols = [c for _, c in pivots]
    sub = [[rows[i][c] for c in sel_cols] for i in sel_rows]
    x = solve_fraction_field(sub, [rhs[i] for i in sel_rows]) if sub else []
    if x is None:
        return None
    out = [RatFunc(ZERO)] * ncols
    for c, v in zip(sel_cols, x):
        out[c] = v
    return out


def solve_fraction_field(rows: Sequence[Sequence[MultiPoly]], rhs: Sequence[MultiPoly]) -> Optional[List[RatFunc]]:
    """Gauss-Jordan over the field of fractions, reducing every entry.

    Preferable to :func:`solve` when the solution is simple but the
    determinants are large, since entries stay in lowest terms.
    """
    ncols = len(rows[0]) if rows else 0
    a = [[RatFunc(x) for x in r] + [RatFunc(b)] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols + 1):
        cands = [i for i in range(r, len(a)) if not a[i][c].is_zero()]
        if not cands:
            continue
        if c == ncols:
            return None
        best = min(cands, key=lambda i: (len(a[i][c].num.terms) + len(a[i][c].den.terms), i))
        a[r], a[best] = a[best], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv if not x.is_zero() else x for x in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y if not y.is_zero() else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    x = [RatFunc(ZERO)] * ncols
    for i, c in enumerate(pivots):
        x[c] = a[i][ncols]
    return x
