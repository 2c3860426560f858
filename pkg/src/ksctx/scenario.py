"""Two-party dichotomic measurement scenarios and their contextual variables.

A contextual variable ``x_y`` is the value of observable ``x`` when it is
measured together with ``y`` on the other party. A scenario with ``C``
contexts therefore carries ``2 * C`` contextual variables.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property

from .errors import ParseError, ScenarioError


class Party(enum.Enum):
    LEFT = "Left"
    RIGHT = "Right"

    @classmethod
    def parse(cls, text: str) -> "Party":
        for p in cls:
            if p.value.lower() == text.lower():
                return p
        raise ValueError(f"unknown party {text!r} (expected Left or Right)")


@dataclass(frozen=True)
class Observable:
    party: Party
    label: str

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class Context:
    left: Observable
    right: Observable

    def __post_init__(self):
        if self.left.party is not Party.LEFT or self.right.party is not Party.RIGHT:
            raise ScenarioError(
                f"context ({self.left}, {self.right}) needs one Left and one Right observable"
            )

    def __str__(self):
        return f"({self.left},{self.right})"


@dataclass(frozen=True)
class ContextualVariable:
    """Observable ``base`` as measured alongside ``partner``."""

    base: Observable
    partner: Observable

    def __post_init__(self):
        if self.base.party is self.partner.party:
            raise ScenarioError(f"{self.base} and {self.partner} belong to the same party")

    @property
    def name(self) -> str:
        return f"{self.base.label}_{self.partner.label}"

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Scenario:
    observables: tuple[Observable, ...]
    contexts: tuple[Context, ...]
    functional: tuple[tuple[Context, int], ...]
    _variables: tuple[ContextualVariable, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        seen = set()
        for o in self.observables:
            if (o.party, o.label) in seen:
                raise ScenarioError(f"duplicate observable {o.label!r} on party {o.party.value}")
            seen.add((o.party, o.label))
        if len(set(self.contexts)) != len(self.contexts):
            raise ScenarioError("contexts must be pairwise distinct")
        for c in self.contexts:
            if c.left not in self.observables or c.right not in self.observables:
                raise ScenarioError(f"context {c} uses an undeclared observable")
        for c, coeff in self.functional:
            if c not in self.contexts:
                raise ScenarioError(f"functional term {c} is not a declared context")
            if coeff not in (-1, 1):
                raise ScenarioError(f"functional coefficient must be +1 or -1, got {coeff}")
        object.__setattr__(self, "_variables", self._build_variables())

    def _build_variables(self):
        order = []
        for party in (Party.LEFT, Party.RIGHT):
            for obs in self.observables:
                if obs.party is not party:
                    continue
                partners = {c.right if party is Party.LEFT else c.left
                            for c in self.contexts
                            if (c.left if party is Party.LEFT else c.right) == obs}
                for p in self.observables:
                    if p in partners:
                        order.append(ContextualVariable(obs, p))
        return tuple(order)

    @property
    def variables(self) -> tuple[ContextualVariable, ...]:
        return self._variables

    @cached_property
    def variable_index(self) -> dict[ContextualVariable, int]:
        return {v: i for i, v in enumerate(self._variables)}

    @cached_property
    def context_pairs(self) -> tuple[tuple[int, int], ...]:
        """Per context, indices of (left_right, right_left) in variable order."""
        idx = self.variable_index
        return tuple((idx[ContextualVariable(c.left, c.right)],
                      idx[ContextualVariable(c.right, c.left)]) for c in self.contexts)

    @cached_property
    def functional_terms(self) -> tuple[tuple[int, int, int], ...]:
        """(coefficient, i, j) with i, j the variable indices of each functional context."""
        pos = {c: k for k, c in enumerate(self.contexts)}
        return tuple((coeff, *self.context_pairs[pos[c]]) for c, coeff in self.functional)

    @cached_property
    def variable_groups(self) -> tuple[tuple[int, ...], ...]:
        """Variable indices grouped by base observable, one group per observable in use."""
        groups: dict[Observable, list[int]] = {}
        for i, v in enumerate(self._variables):
            groups.setdefault(v.base, []).append(i)
        return tuple(tuple(g) for g in groups.values())

    def observable(self, label: str, party: Party | None = None) -> Observable:
        hits = [o for o in self.observables
                if o.label == label and (party is None or o.party is party)]
        if len(hits) != 1:
            raise ScenarioError(f"observable {label!r} is {'ambiguous' if hits else 'undeclared'}")
        return hits[0]

    def variable(self, name: str) -> ContextualVariable:
        for v in self._variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def algebraic_bound(self) -> int:
        return len(self.functional)


def builtin_chsh() -> Scenario:
    """The CHSH scenario E(a,b) + E(a,b') + E(a',b) - E(a',b')."""
    a, a2 = Observable(Party.LEFT, "a"), Observable(Party.LEFT, "a'")
    b, b2 = Observable(Party.RIGHT, "b"), Observable(Party.RIGHT, "b'")
    contexts = (Context(a, b), Context(a, b2), Context(a2, b), Context(a2, b2))
    return Scenario(
        observables=(a, a2, b, b2),
        contexts=contexts,
        functional=tuple(zip(contexts, (1, 1, 1, -1))),
    )


def contextual_variables(s: Scenario) -> list[ContextualVariable]:
    return list(s.variables)


def parse_scenario(text: str) -> Scenario:
    """Parse the line-oriented scenario format.

    Directives::

        observable <Left|Right> <label>
        context <leftLabel> <rightLabel>
        functional <leftLabel> <rightLabel> <+1|-1>

    ``#`` starts a comment. Contexts joining three or more observables are
    rejected: the ``x_y`` notation does not say which partner is meant.
    """
    observables: list[Observable] = []
    contexts: list[Context] = []
    functional: list[tuple[Context, int]] = []

    def lookup(label, party, lineno):
        for o in observables:
            if o.label == label and o.party is party:
                return o
        raise ParseError(f"undeclared {party.value} observable {label!r}", lineno)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        word, *args = line.split()
        try:
            if word == "observable":
                if len(args) != 2:
                    raise ParseError("expected: observable <party> <label>", lineno)
                observables.append(Observable(Party.parse(args[0]), args[1]))
            elif word == "context":
                if len(args) > 2:
                    raise ParseError(
                        "contexts with three or more co-measured observables are not supported",
                        lineno)
                if len(args) != 2:
                    raise ParseError("expected: context <leftLabel> <rightLabel>", lineno)
                contexts.append(Context(lookup(args[0], Party.LEFT, lineno),
                                        lookup(args[1], Party.RIGHT, lineno)))
            elif word == "functional":
                if len(args) != 3 or args[2] not in ("+1", "-1", "1"):
                    raise ParseError("expected: functional <leftLabel> <rightLabel> <+1|-1>",
                                     lineno)
                ctx = Context(lookup(args[0], Party.LEFT, lineno),
                              lookup(args[1], Party.RIGHT, lineno))
                functional.append((ctx, int(args[2])))
            else:
                raise ParseError(f"unknown directive {word!r}", lineno)
        except (ValueError, ScenarioError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), lineno) from exc
    try:
        return Scenario(tuple(observables), tuple(contexts), tuple(functional))
    except ScenarioError as exc:
        raise ParseError(str(exc)) from exc


def format_scenario(s: Scenario) -> str:
    lines = [f"observable {o.party.value} {o.label}" for o in s.observables]
    lines += [f"context {c.left.label} {c.right.label}" for c in s.contexts]
    lines += [f"functional {c.left.label} {c.right.label} {coeff:+d}" for c, coeff in s.functional]
    return "\n".join(lines) + "\n"
