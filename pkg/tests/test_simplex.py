from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from ksctx.simplex import is_feasible, solve_lp

F = Fraction


def test_small_lp():
    # min -x1 - x2 s.t. x1 + 2 x2 + s1 = 4, 3 x1 + x2 + s2 = 6
    res = solve_lp([-1, -1, 0, 0], [[1, 2, 1, 0], [3, 1, 0, 1]], [4, 6])
    assert res.status == "optimal"
    assert res.value == F(-14, 5)
    assert res.x[:2] == [F(8, 5), F(6, 5)]


def test_infeasible_and_unbounded():
    assert solve_lp([0, 0], [[1, 1]], [-1]).status == "infeasible"
    assert solve_lp([-1, 0], [[1, -1]], [0]).status == "unbounded"
    assert not is_feasible([[1, 1], [1, 1]], [1, 2])


def test_redundant_rows_are_dropped():
    res = solve_lp([1, 2], [[1, 1], [2, 2]], [1, 2])
    assert res.status == "optimal" and res.value == 1


def test_degenerate_cycling_example():
    # Beale's example, cycles under the textbook largest-coefficient rule
    c = [F(-3, 4), 150, F(-1, 50), 6, 0, 0, 0]
    A = [[F(1, 4), -60, F(-1, 25), 9, 1, 0, 0],
         [F(1, 2), -90, F(-1, 50), 3, 0, 1, 0],
         [0, 0, 1, 0, 0, 0, 1]]
    res = solve_lp(c, A, [0, 0, 1])
    assert res.status == "optimal"
    assert res.value == F(-1, 20)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(2, 7), st.data())
def test_matches_highs(m, n, data):
    ints = st.integers(-4, 4)
    A = [[data.draw(ints) for _ in range(n)] for _ in range(m)]
    x0 = [data.draw(st.integers(0, 3)) for _ in range(n)]
    b = [sum(a * x for a, x in zip(row, x0)) for row in A]  # feasible by construction
    c = [data.draw(ints) for _ in range(n)]
    A.append([1] * n)  # bounded
    b.append(sum(x0))
    res = solve_lp(c, A, b)
    ref = linprog(c, A_eq=np.array(A, float), b_eq=np.array(b, float), bounds=(0, None),
                  method="highs")
    assert res.status == "optimal" and ref.status == 0
    assert float(res.value) == pytest.approx(ref.fun, abs=1e-7)
    assert all(sum(F(a) * x for a, x in zip(row, res.x)) == bi for row, bi in zip(A, b))
    assert all(x >= 0 for x in res.x)
    assert all(r >= 0 for r in res.reduced_costs)
