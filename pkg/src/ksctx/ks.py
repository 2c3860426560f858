"""Two-valued states on Kochen-Specker hypergraphs.

Contexts are complete bases: a two-valued state gives exactly one atom per
context the value 1. A hypergraph without any such state forces a
contextual value assignment for every quantum.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from itertools import combinations, product
from typing import NamedTuple

from .errors import DuplicateAtomInContext, NonExhaustiveStates, ParseError, TooManyAtoms

MAX_ATOMS = 128


@dataclass(frozen=True)
class Hypergraph:
    atoms: tuple[str, ...]
    contexts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.atoms)
        if len(set(self.atoms)) != n:
            raise ValueError("atom labels must be unique")
        for ctx in self.contexts:
            if len(ctx) < 2:
                raise ValueError(f"context {ctx} has fewer than 2 atoms")
            if len(set(ctx)) != len(ctx):
                raise DuplicateAtomInContext(f"context {ctx} repeats an atom")
            if any(not 0 <= i < n for i in ctx):
                raise ValueError(f"context {ctx} has an out-of-range atom index")

    @classmethod
    def from_labels(cls, contexts) -> "Hypergraph":
        atoms: dict[str, int] = {}
        out = []
        for ctx in contexts:
            out.append(tuple(atoms.setdefault(lbl, len(atoms)) for lbl in ctx))
        return cls(tuple(atoms), tuple(out))

    @cached_property
    def memberships(self) -> tuple[tuple[int, ...], ...]:
        """Per atom, the indices of the contexts containing it."""
        mem: list[list[int]] = [[] for _ in self.atoms]
        for k, ctx in enumerate(self.contexts):
            for i in ctx:
                mem[i].append(k)
        return tuple(tuple(m) for m in mem)

    def relabeled(self, perm, context_order=None) -> "Hypergraph":
        """Same structure with atom i renamed to position perm[i]."""
        atoms = [None] * len(self.atoms)
        for i, p in enumerate(perm):
            atoms[p] = self.atoms[i]
        ctxs = [tuple(perm[i] for i in c) for c in self.contexts]
        if context_order is not None:
            ctxs = [ctxs[k] for k in context_order]
        return Hypergraph(tuple(atoms), tuple(ctxs))


@dataclass(frozen=True)
class TwoValuedState:
    values: tuple[int, ...]

    def true_atoms(self, hg: Hypergraph) -> list[str]:
        return [hg.atoms[i] for i, v in enumerate(self.values) if v]

    def is_valid(self, hg: Hypergraph) -> bool:
        return all(sum(self.values[i] for i in ctx) == 1 for ctx in hg.contexts)


class StateEnumeration(NamedTuple):
    states: list[TwoValuedState]
    exhaustive: bool


class EmbeddabilityReport(NamedTuple):
    unital: bool
    separating: bool


def parse_hypergraph(text: str) -> Hypergraph:
    """One context per line, whitespace-separated atom labels; ``#`` comments."""
    contexts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        labels = line.split()
        if len(set(labels)) != len(labels):
            dup = next(lbl for lbl in labels if labels.count(lbl) > 1)
            raise DuplicateAtomInContext(f"atom {dup!r} repeated in context", lineno)
        if len(labels) < 2:
            raise ParseError("a context needs at least 2 atoms", lineno)
        contexts.append(labels)
    if not contexts:
        raise ParseError("no contexts found")
    return Hypergraph.from_labels(contexts)


def load_fixture(name: str) -> Hypergraph:
    """Shipped hypergraph data files (``cega18``, ``pentagon10``, ...)."""
    path = resources.files("ksctx") / "data" / f"{name}.txt"
    return parse_hypergraph(path.read_text(encoding="utf-8"))


def fixture_names() -> list[str]:
    data = resources.files("ksctx") / "data"
    return sorted(p.name[:-4] for p in data.iterdir() if p.name.endswith(".txt"))


def _search_order(hg: Hypergraph) -> list[int]:
    deg = [len(m) for m in hg.memberships]
    return sorted(range(len(hg.atoms)), key=lambda i: (-deg[i], i))


def enumerate_two_valued_states(hg: Hypergraph, limit: int | None = None) -> StateEnumeration:
    """Depth-first search with unit propagation over exactly-one-true contexts.

    States come back sorted by value tuple, so the result does not depend
    on the branching order. With ``limit`` the search stops after that many
    states; ``exhaustive`` is then true only if no further state exists.
    """
    n = len(hg.atoms)
    if n > MAX_ATOMS:
        raise TooManyAtoms(f"{n} atoms exceeds the limit of {MAX_ATOMS}")
    order = _search_order(hg)
    mem = hg.memberships
    contexts = hg.contexts
    value = [-1] * n
    found: list[tuple[int, ...]] = []

    def assign(atom, v, trail):
        """Set atom and propagate; False on conflict."""
        queue = [(atom, v)]
        while queue:
            a, val = queue.pop()
            if value[a] != -1:
                if value[a] != val:
                    return False
                continue
            value[a] = val
            trail.append(a)
            for k in mem[a]:
                ctx = contexts[k]
                if val == 1:
                    for b in ctx:
                        if b != a:
                            queue.append((b, 0))
                else:
                    ones = sum(1 for b in ctx if value[b] == 1)
                    if ones:
                        continue
                    free = [b for b in ctx if value[b] == -1]
                    if not free:
                        return False
                    if len(free) == 1:
                        queue.append((free[0], 1))
        return True

    def undo(trail):
        for a in trail:
            value[a] = -1

    class _Stop(Exception):
        pass

    def search(pos):
        while pos < n and value[order[pos]] != -1:
            pos += 1
        if pos == n:
            found.append(tuple(value))
            if limit is not None and len(found) > limit:
                raise _Stop
            return
        atom = order[pos]
        for v in (1, 0):
            trail: list[int] = []
            if assign(atom, v, trail):
                search(pos + 1)
            undo(trail)

    exhaustive = True
    try:
        search(0)
    except _Stop:
        exhaustive = False
    if limit is not None:
        found = found[:limit]
    states = [TwoValuedState(v) for v in sorted(found, reverse=True)]
    return StateEnumeration(states, exhaustive)


def naive_two_valued_states(hg: Hypergraph) -> list[TwoValuedState]:
    """Filter all 2^n value tuples; for cross-checking small hypergraphs only."""
    n = len(hg.atoms)
    if n > 20:
        raise TooManyAtoms("naive enumeration is limited to 20 atoms")
    out = [vals for vals in product((0, 1), repeat=n)
           if all(sum(vals[i] for i in ctx) == 1 for ctx in hg.contexts)]
    return [TwoValuedState(v) for v in sorted(out, reverse=True)]


def embeddability_checks(hg: Hypergraph, enumeration: StateEnumeration) -> EmbeddabilityReport:
    """Unital: every atom is 1 in some state. Separating: every atom pair is split by some state."""
    if not enumeration.exhaustive:
        raise NonExhaustiveStates("embeddability needs the complete set of two-valued states")
    states = enumeration.states
    n = len(hg.atoms)
    unital = bool(states) and all(any(s.values[i] for s in states) for i in range(n))
    separating = bool(states) and all(
        any(s.values[i] != s.values[j] for s in states) for i, j in combinations(range(n), 2))
    return EmbeddabilityReport(unital, separating)
