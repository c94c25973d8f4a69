"""Exact rational linear algebra on tuples of Fractions.

Vectors are tuples, matrices are tuples of row tuples.  Nothing here
ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Vector = tuple
Matrix = tuple


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass a rational string")
    return Fraction(x)


def vec(xs: Iterable) -> Vector:
    return tuple(as_fraction(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(vec(r) for r in rows)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def neg(u: Sequence) -> Vector:
    return tuple(-a for a in u)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Sequence, m: Sequence[Sequence]) -> Vector:
    """Row vector times matrix."""
    if not m:
        return ()
    ncol = len(m[0])
    return tuple(sum((v[i] * m[i][j] for i in range(len(m))), Fraction(0))
                 for j in range(ncol))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.  Returns (nonzero rows, pivot columns)."""
    m = [list(map(as_fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n: int) -> list[Vector]:
    """Basis of {x : rows @ x = 0} in Q^n."""
    if not rows:
        return [unit(n, i) for i in range(n)]
    red, pivots = rref(rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def row_basis(rows: Sequence[Sequence], n: int) -> list[Vector]:
    """Canonical basis (rref rows) of the span of `rows`."""
    if not rows:
        return []
    return list(rref(rows, n)[0])


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """One solution of a x = b, or None when inconsistent."""
    n = len(a[0]) if a else 0
    aug = [tuple(r) + (bi,) for r, bi in zip(a, b)]
    red, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, p in zip(red, pivots):
        x[p] = row[n]
    return tuple(x)


def inverse(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    aug = [tuple(r) + unit(n, i) for i, r in enumerate(m)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != tuple(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def det(m: Sequence[Sequence]) -> Fraction:
    a = [list(map(as_fraction, r)) for r in m]
    n = len(a)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def ldl_pivots(m: Sequence[Sequence]) -> list[Fraction]:
    """Pivots of an exact symmetric LDL^T factorization (no pivoting)."""
    a = [list(map(as_fraction, r)) for r in m]
    n = len(a)
    pivots = []
    for c in range(n):
        p = a[c][c]
        pivots.append(p)
        if p == 0:
            break
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / p
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return pivots


def denominator_lcm(v: Iterable[Fraction]) -> int:
    return reduce(lcm, (Fraction(x).denominator for x in v), 1)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive multiple of v with coprime integer entries."""
    d = denominator_lcm(v)
    ints = [int(x * d) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def canonical_line(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector with positive leading nonzero entry."""
    p = primitive(v)
    for x in p:
        if x != 0:
            return p if x > 0 else tuple(-y for y in p)
    return p
