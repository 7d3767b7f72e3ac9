"""Exact rational linear algebra on small dense matrices.

Everything here works on sequences of ``Fraction`` (or ``int``) and never
touches floating point.  Matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(frac(x) for x in xs)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def smul(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def neg(a: Sequence) -> Vector:
    return tuple(-x for x in a)


def denominator_lcm(xs: Iterable[Fraction]) -> int:
    return reduce(lcm, (frac(x).denominator for x in xs), 1)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    if all(type(x) is int for x in v):
        g = reduce(gcd, v, 0)
        return tuple(v) if g == 0 else tuple(x // g for x in v)
    v = [frac(x) for x in v]
    m = denominator_lcm(v)
    ints = [int(x * m) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(i // g for i in ints)


def lex_sign_normalize(v: Sequence[int]) -> tuple[int, ...]:
    """Flip sign so that the first nonzero entry is positive."""
    for x in v:
        if x != 0:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[frac(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : rows @ x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, piv = rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for i, p in enumerate(piv):
            x[p] = -red[i][f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector:
    """Solve the square nonsingular system a x = b exactly."""
    n = len(a)
    aug = [list(map(frac, row)) + [frac(bi)] for row, bi in zip(a, b)]
    red, piv = rref(aug)
    if piv != list(range(n)):
        raise ZeroDivisionError("singular system")
    return tuple(red[i][n] for i in range(n))


def det(a: Sequence[Sequence]) -> Fraction:
    m = [[frac(x) for x in r] for r in a]
    n = len(m)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return d


def int_det(a: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix (Bareiss, fraction free)."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def independent_columns(rows: Sequence[Sequence]) -> list[int]:
    """Pivot column indices of ``rows`` (a maximal independent set of columns)."""
    return rref(rows)[1]


def independent_rows(rows: Sequence[Sequence]) -> list[int]:
    """Indices of a greedy maximal independent subset of rows, in order."""
    chosen: list[int] = []
    # reduced basis rows keyed by their pivot column
    basis: dict[int, list[Fraction]] = {}
    for i, r in enumerate(rows):
        v = [frac(x) for x in r]
        for col, b in basis.items():
            if v[col]:
                c = v[col] / b[col]
                v = [x - c * y for x, y in zip(v, b)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is not None:
            basis[piv] = v
            chosen.append(i)
            if len(chosen) == len(v):
                break
    return chosen
