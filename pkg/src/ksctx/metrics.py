"""How much contextuality a target CHSH value needs.

The central quantity is the smallest total weight that a mixture of
assignments must put on contextual assignments while its expected
functional value equals a target ``lam``. It is found by an exact
linear program over all enumerated assignments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import NamedTuple

from . import simplex
from .enumeration import (Assignment, contextuality_count, enumerate_assignments,
                          functional_value)
from .errors import InfeasibleTarget
from .fmt import rational_str, rational_with_decimal
from .linalg import rank, solve
from .scenario import Scenario

# rational stand-in for 2*sqrt(2); |TSIRELSON_APPROX - 2 sqrt 2| < 4.3e-4
TSIRELSON_APPROX = Fraction(707, 250)


@dataclass(frozen=True)
class Mixture:
    weights: dict[Assignment, Fraction]

    def __post_init__(self):
        if any(w < 0 for w in self.weights.values()):
            raise ValueError("mixture weights must be nonnegative")
        if sum(self.weights.values(), Fraction(0)) != 1:
            raise ValueError("mixture weights must sum to 1")

    @classmethod
    def point(cls, a: Assignment) -> "Mixture":
        return cls({a: Fraction(1)})

    @classmethod
    def uniform(cls, assignments) -> "Mixture":
        assignments = list(assignments)
        w: dict[Assignment, Fraction] = {}
        for a in assignments:
            w[a] = w.get(a, Fraction(0)) + Fraction(1, len(assignments))
        return cls(w)

    def expected_functional(self, s: Scenario) -> Fraction:
        return sum((w * functional_value(s, a) for a, w in self.weights.items()), Fraction(0))

    def contextual_weight(self) -> Fraction:
        return sum((w for a, w in self.weights.items() if contextuality_count(a) > 0),
                   Fraction(0))


@dataclass(frozen=True)
class ContextualityReport:
    lambda_target: Fraction
    min_contextual_fraction: Fraction
    ratio_contextual_to_noncontextual: tuple[Fraction, Fraction]
    witness: Mixture
    # (assignment index in enumeration order, weight), ascending by index
    witness_support: tuple[tuple[int, Fraction], ...]
    at_least: bool = False

    def ratio_ints(self) -> tuple[int, int]:
        p, q = self.ratio_contextual_to_noncontextual
        den = math.lcm(p.denominator, q.denominator)
        a, b = int(p * den), int(q * den)
        g = math.gcd(a, b) or 1
        return a // g, b // g


def _lex_basic_support(A, b, candidates):
    """Lexicographically smallest support of a basic solution of A x = b, x >= 0.

    Only columns in ``candidates`` (ascending) may be used. Returns the
    support and the weights on it, or None.
    """
    m = len(A)
    full_rank = rank(A)

    def weights_for(S):
        cols = [[A[r][j] for j in S] for r in range(m)]
        if rank(cols) < len(S):
            return None
        rows = []
        for r in range(m):
            trial = rows + [r]
            if rank([cols[k] for k in trial]) == len(trial):
                rows = trial
            if len(rows) == len(S):
                break
        w = solve([cols[r] for r in rows], [b[r] for r in rows])
        if any(x <= 0 for x in w):
            return None
        if any(sum(cols[r][k] * w[k] for k in range(len(S))) != b[r] for r in range(m)):
            return None
        return w

    def dfs(prefix, start):
        for pos in range(start, len(candidates)):
            S = prefix + [candidates[pos]]
            w = weights_for(S)
            if w is not None:
                return S, w
            if len(S) < full_rank:
                found = dfs(S, pos + 1)
                if found is not None:
                    return found
        return None

    return dfs([], 0)


def min_contextual_fraction(s: Scenario, lambda_target, at_least: bool = False
                            ) -> ContextualityReport:
    """Minimal weight on contextual assignments for an expected functional of ``lambda_target``.

    With ``at_least`` the constraint is relaxed to expected value >= target.
    Optimal witnesses are made unique by taking the basic optimal solution
    whose sorted support (enumeration indices) is lexicographically smallest.
    """
    lam = Fraction(lambda_target)
    assignments = enumerate_assignments(s)
    f = [functional_value(s, a) for a in assignments]
    contextual = [int(contextuality_count(a) > 0) for a in assignments]
    hi, lo = max(f), min(f)
    if lam > hi or (not at_least and lam < lo):
        raise InfeasibleTarget(f"target {lam} outside the attainable range [{lo}, {hi}]")

    n = len(assignments)
    A = [[1] * n, list(f)]
    cost = list(contextual)
    if at_least:
        A[0].append(0)
        A[1].append(-1)
        cost.append(0)
    b = [1, lam]
    res = simplex.solve_lp(cost, A, b)
    if res.status != "optimal":
        raise InfeasibleTarget(f"no mixture reaches {lam} ({res.status})")

    face = [j for j, r in enumerate(res.reduced_costs) if r == 0]
    A_face = [[Fraction(x) for x in row] for row in A]
    found = _lex_basic_support(A_face, [Fraction(x) for x in b], face)
    assert found is not None, "optimal face without a basic solution"
    support, weights = found
    pairs = [(j, w) for j, w in zip(support, weights) if j < n]
    witness = Mixture({assignments[j]: w for j, w in pairs})
    frac = res.value
    assert witness.contextual_weight() == frac
    return ContextualityReport(
        lambda_target=lam,
        min_contextual_fraction=frac,
        ratio_contextual_to_noncontextual=(frac, 1 - frac),
        witness=witness,
        witness_support=tuple(sorted(pairs)),
        at_least=at_least,
    )


def fraction_closed_form(lambda_target):
    """max(0, (|lam| - 2) / 2): the CHSH answer.

    Rationals stay exact; symbolic inputs (e.g. a sympy ``2*sqrt(2)``)
    are passed through the same arithmetic.
    """
    lam = lambda_target
    if isinstance(lam, int):
        lam = Fraction(lam)
    val = (abs(lam) - 2) / 2
    return val if val > 0 else 0 * val


def tsirelson_fraction_decimal(digits: int = 12) -> str:
    """sqrt(2) - 1 to ``digits`` significant digits."""
    with localcontext() as ctx:
        ctx.prec = digits + 20
        return format(Decimal(2).sqrt() - 1, f".{digits}g")


def average_contextual_per_quantum(m: Mixture) -> Fraction:
    return sum((w * contextuality_count(a) for a, w in m.weights.items()), Fraction(0))


class KSStatement(NamedTuple):
    fraction: Fraction
    undetermined: bool


def ks_fraction_statement(state_count: int) -> KSStatement:
    """Per-quantum contextual fraction implied by a two-valued state count.

    No two-valued states: every quantum needs a contextual breach (1).
    Otherwise nothing is forced and the answer is left undetermined.
    """
    if state_count < 0:
        raise ValueError("state count must be nonnegative")
    if state_count == 0:
        return KSStatement(Fraction(1), False)
    return KSStatement(Fraction(0), True)


def format_report(report: ContextualityReport) -> str:
    p, q = report.ratio_ints()
    support = ",".join(f"{j}:{rational_str(w)}" for j, w in report.witness_support)
    lines = [
        f"lambda={rational_with_decimal(report.lambda_target)}",
        f"fraction={rational_with_decimal(report.min_contextual_fraction)}",
        f"ratio={p}:{q}",
        f"witness_support={support}",
    ]
    if report.at_least:
        lines.append("mode=at-least")
    return "\n".join(lines) + "\n"
