"""Exact small-matrix helpers over Fractions."""
import math
from fractions import Fraction
from typing import Sequence


def primitive(v: Sequence) -> tuple[int, ...]:
    """Positive rescaling of a rational vector to coprime integers."""
    v = [Fraction(x) for x in v]
    den = math.lcm(*(x.denominator for x in v)) if v else 1
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    return tuple(x // g for x in ints) if g else tuple(ints)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def rank(rows) -> int:
    """Exact rank by Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    rk, ncols = 0, len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((r for r in range(rk, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        for r in range(rk + 1, len(m)):
            if m[r][col]:
                f = m[r][col] / m[rk][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rk])]
        rk += 1
    return rk


def independent_rows(rows, d):
    """Indices of the first (in order) maximal linearly independent subset."""
    chosen, basis = [], []
    for i, r in enumerate(rows):
        if rank(basis + [r]) > len(basis):
            chosen.append(i)
            basis.append(r)
            if len(chosen) == d:
                break
    return chosen


def solve(matrix, rhs):
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]
