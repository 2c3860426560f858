"""Contextual value assignments: enumeration, classification and evaluation.

Everything here is integer arithmetic on values in {-1, +1}.
"""
from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass

from .errors import ScenarioTooLarge
from .scenario import ContextualVariable, Scenario

MAX_VARIABLES = 30


@dataclass(frozen=True)
class Assignment:
    """Values of every contextual variable of a scenario, in canonical order."""

    values: tuple[int, ...]
    variables: tuple[ContextualVariable, ...]

    def __post_init__(self):
        if len(self.values) != len(self.variables):
            raise ValueError(f"{len(self.values)} values for {len(self.variables)} variables")
        if any(v not in (-1, 1) for v in self.values):
            raise ValueError(f"values must be -1 or +1, got {self.values}")

    def __getitem__(self, key):
        if isinstance(key, ContextualVariable):
            return self.values[self.variables.index(key)]
        if isinstance(key, str):
            for var, val in zip(self.variables, self.values):
                if var.name == key:
                    return val
            raise KeyError(key)
        return self.values[key]

    def negated(self) -> "Assignment":
        return Assignment(tuple(-v for v in self.values), self.variables)

    def __str__(self):
        return " ".join(f"{v:+d}" for v in self.values)


@dataclass(frozen=True)
class ExpectationRow:
    singles: tuple[int, ...]
    joints: tuple[int, ...]

    def coordinates(self) -> tuple[int, ...]:
        return self.singles + self.joints


def make_assignment(s: Scenario, values) -> Assignment:
    return Assignment(tuple(int(v) for v in values), s.variables)


def enumerate_assignments(s: Scenario) -> list[Assignment]:
    """All 2^m assignments, lexicographic with -1 before +1."""
    m = len(s.variables)
    if m > MAX_VARIABLES:
        raise ScenarioTooLarge(f"{m} contextual variables exceeds the limit of {MAX_VARIABLES}")
    return [Assignment(vals, s.variables) for vals in itertools.product((-1, 1), repeat=m)]


def _groups(a: Assignment):
    groups: dict = {}
    for i, var in enumerate(a.variables):
        groups.setdefault(var.base, []).append(a.values[i])
    return groups.values()


def is_noncontextual(a: Assignment) -> bool:
    return all(len(set(vals)) == 1 for vals in _groups(a))


def contextuality_count(a: Assignment) -> int:
    """Number of observables whose value depends on the co-measured partner."""
    return sum(len(set(vals)) > 1 for vals in _groups(a))


def functional_value(s: Scenario, a: Assignment) -> int:
    v = a.values
    return sum(coeff * v[i] * v[j] for coeff, i, j in s.functional_terms)


def expectation_row(s: Scenario, a: Assignment) -> ExpectationRow:
    v = a.values
    return ExpectationRow(singles=tuple(v), joints=tuple(v[i] * v[j] for i, j in s.context_pairs))


def joint_names(s: Scenario) -> list[str]:
    return [f"{s.variables[i].name}*{s.variables[j].name}" for i, j in s.context_pairs]


def coordinate_names(s: Scenario) -> list[str]:
    """Names of the ExpectationRow coordinates: singles then joints."""
    return [v.name for v in s.variables] + joint_names(s)


def _pm(v: int) -> str:
    return f"{v:+d}"


def assignments_csv(s: Scenario, assignments=None) -> str:
    """CSV rendering of the full assignment table, joints and classification included."""
    if assignments is None:
        assignments = enumerate_assignments(s)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(coordinate_names(s) + ["noncontextual", "functional"])
    for a in assignments:
        row = expectation_row(s, a)
        w.writerow([_pm(x) for x in row.coordinates()]
                   + [int(is_noncontextual(a)), functional_value(s, a)])
    return buf.getvalue()
