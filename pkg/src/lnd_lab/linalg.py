"""Exact linear algebra over the rationals.

Matrices are lists of rows.  Rows are scaled to integers and eliminated
fraction-free (Bareiss style, with per-row content removal), so the only
``Fraction`` arithmetic happens when solutions are read off.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm


def _integer_row(row) -> list[int]:
    den = 1
    for x in row:
        x = Fraction(x)
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    return [int(Fraction(x) * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def echelon(rows, ncols: int) -> tuple[list[list[int]], list[int]]:
    """Integer row-echelon form and pivot columns.

    Pivots are taken left to right, so column order controls which
    variables end up free.
    """
    m = [_primitive(_integer_row(r)) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        prow = m[r]
        a = prow[c]
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if b:
                row = m[i]
                m[i] = _primitive([a * row[k] - b * prow[k] for k in range(ncols)])
        pivots.append(c)
        r += 1
    return [row for row in m[:r]], pivots


def rank(rows, ncols: int) -> int:
    return len(echelon(rows, ncols)[1])


def rref(rows, ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form with unit pivots."""
    ech, pivots = echelon(rows, ncols)
    out = [[Fraction(x) for x in row] for row in ech]
    for r in range(len(out) - 1, -1, -1):
        c = pivots[r]
        inv = 1 / out[r][c]
        out[r] = [x * inv for x in out[r]]
        for i in range(r):
            f = out[i][c]
            if f:
                out[i] = [x - f * y for x, y in zip(out[i], out[r])]
    return out, pivots


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}, one vector per free column (value 1 there)."""
    red, pivots = rref(rows, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs, ncols: int) -> list[Fraction] | None:
    """One solution of rows . v = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        v[p] = row[ncols]
    return v
