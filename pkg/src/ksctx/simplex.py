"""Dense two-phase simplex over Fractions with Bland's anti-cycling rule.

Solves ``min c.x  s.t.  A x = b, x >= 0``. Sized for a handful of rows and a
few hundred columns; every pivot is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass
class LPResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    value: Fraction | None = None
    x: list[Fraction] | None = None
    basis: list[int] | None = None
    reduced_costs: list[Fraction] | None = None


class _Tableau:
    def __init__(self, A, b):
        self.rows = [list(r) + [bi] for r, bi in zip(A, b)]
        self.basis: list[int] = []

    def pivot(self, r, col):
        row = self.rows[r]
        p = row[col]
        row[:] = [x / p for x in row]
        for k, other in enumerate(self.rows):
            if k != r and other[col]:
                f = other[col]
                other[:] = [x - f * y for x, y in zip(other, row)]
        self.basis[r] = col

    def reduced_costs(self, c, ncols):
        rc = list(c[:ncols]) + [Fraction(0)] * (ncols - len(c))
        for r, bcol in enumerate(self.basis):
            cb = c[bcol] if bcol < len(c) else Fraction(0)
            if cb:
                row = self.rows[r]
                for j in range(ncols):
                    if row[j]:
                        rc[j] -= cb * row[j]
        return rc

    def run(self, c, allowed):
        """Bland's rule iterations; ``allowed`` lists columns that may enter."""
        while True:
            rc = self.reduced_costs(c, len(self.rows[0]) - 1)
            entering = next((j for j in allowed if rc[j] < 0), None)
            if entering is None:
                return "optimal", rc
            best = None
            for r, row in enumerate(self.rows):
                if row[entering] > 0:
                    ratio = row[-1] / row[entering]
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return "unbounded", rc
            self.pivot(best[1], entering)


def solve_lp(c, A, b) -> LPResult:
    """Minimize c.x subject to A x = b, x >= 0, exactly."""
    m, n = len(A), len(c)
    A = [[Fraction(x) for x in row] for row in A]
    b = [Fraction(x) for x in b]
    c = [Fraction(x) for x in c]
    for i in range(m):
        if b[i] < 0:
            A[i] = [-x for x in A[i]]
            b[i] = -b[i]

    # phase 1: artificial columns n .. n+m-1
    rows = [A[i] + [Fraction(int(i == k)) for k in range(m)] for i in range(m)]
    tab = _Tableau(rows, b)
    tab.basis = list(range(n, n + m))
    phase1_cost = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(phase1_cost, range(n + m))
    infeas = sum(tab.rows[r][-1] for r, col in enumerate(tab.basis) if col >= n)
    if infeas > 0:
        return LPResult("infeasible")

    # drive remaining (zero-level) artificials out; drop redundant rows
    r = 0
    while r < len(tab.rows):
        if tab.basis[r] >= n:
            col = next((j for j in range(n) if tab.rows[r][j] != 0), None)
            if col is None:
                del tab.rows[r]
                del tab.basis[r]
                continue
            tab.pivot(r, col)
        r += 1
    tab.rows = [row[:n] + [row[-1]] for row in tab.rows]

    status, rc = tab.run(c, range(n))
    if status != "optimal":
        return LPResult(status)
    x = [Fraction(0)] * n
    for r, col in enumerate(tab.basis):
        x[col] = tab.rows[r][-1]
    return LPResult("optimal", sum(ci * xi for ci, xi in zip(c, x)), x, list(tab.basis), rc)


def is_feasible(A, b) -> bool:
    n = len(A[0]) if A else 0
    return solve_lp([0] * n, A, b).status == "optimal"
