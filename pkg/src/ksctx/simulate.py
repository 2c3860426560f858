"""Seeded streams of counterfactual assignments for the CHSH scenario.

Every entry is one of four assignment families: the two noncontextual
constant assignments (value 2) and the two single-flip contextual ones
(value 4). A stream of N entries with k contextual ones therefore scores
exactly 2 + 2k/N, whatever the seed.

Randomness is SplitMix64 (Steele, Lea, Flood 2014), chosen because it is
a few lines in any language. Reference outputs for seed 0 start
0xe220a8397b1dcdaf, 0x6e789e6aa1b965f4, 0x06c45d188009454f. Streams are
built in two passes over one generator:

1. contextual positions: Fisher-Yates shuffle of ``[1]*k + [0]*(N-k)``,
   ``i`` from N-1 down to 1, swapping with ``j = bounded(i + 1)``;
2. global signs: entry ``t`` gets sign -1 iff the top bit of the next
   output is set.

``bounded(n)`` rejects outputs ``>= 2**64 - (2**64 % n)`` and returns the
remainder mod n.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .enumeration import (Assignment, contextuality_count, functional_value,
                          is_noncontextual, make_assignment)
from .errors import EmptyStream, ScenarioError, SpecInvalid, TargetOutOfRange
from .scenario import Scenario

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def bounded(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next()
            if x < limit:
                return x % n


@dataclass(frozen=True)
class StreamSpec:
    n_total: int
    n_contextual: int
    seed: int = 0

    def __post_init__(self):
        if self.n_total < 1:
            raise SpecInvalid(f"n_total must be positive, got {self.n_total}")
        if not 0 <= self.n_contextual <= self.n_total:
            raise SpecInvalid(f"n_contextual must lie in [0, {self.n_total}], "
                              f"got {self.n_contextual}")
        if not 0 <= self.seed <= MASK64:
            raise SpecInvalid("seed must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class Stream:
    entries: tuple[Assignment, ...]
    spec: StreamSpec

    @property
    def contextual_flags(self) -> list[bool]:
        return [contextuality_count(a) > 0 for a in self.entries]


def table_one_rows(s: Scenario) -> tuple[Assignment, Assignment, Assignment, Assignment]:
    """The two contextual assignments reaching the algebraic bound with one
    flipped observable, then the two constant noncontextual ones.

    The contextual pair flips the right-hand variable of the (single)
    context carrying a -1 coefficient.
    """
    negative = [(i, j) for coeff, i, j in s.functional_terms if coeff == -1]
    if len(s.variables) == 0 or len(negative) != 1:
        raise ScenarioError("scenario is not CHSH-shaped (needs exactly one -1 term)")
    m = len(s.variables)
    flip = negative[0][1]
    up = make_assignment(s, [-1 if k == flip else 1 for k in range(m)])
    plus = make_assignment(s, [1] * m)
    rows = (up, up.negated(), plus, plus.negated())
    bound = s.algebraic_bound()
    ok = (all(functional_value(s, r) == bound and contextuality_count(r) == 1 for r in rows[:2])
          and all(is_noncontextual(r) and functional_value(s, r) == bound - 2 for r in rows[2:]))
    if not ok:
        raise ScenarioError("scenario is not CHSH-shaped (single-flip rows miss the bound)")
    return rows


def generate_stream(s: Scenario, spec: StreamSpec) -> Stream:
    contextual_up, _, constant_up, _ = table_one_rows(s)
    rng = SplitMix64(spec.seed)
    flags = [1] * spec.n_contextual + [0] * (spec.n_total - spec.n_contextual)
    for i in range(spec.n_total - 1, 0, -1):
        j = rng.bounded(i + 1)
        flags[i], flags[j] = flags[j], flags[i]
    entries = []
    for flag in flags:
        base = contextual_up if flag else constant_up
        entries.append(base.negated() if rng.next() >> 63 else base)
    return Stream(tuple(entries), spec)


def empirical_functional(s: Scenario, st: Stream) -> Fraction:
    if not st.entries:
        raise EmptyStream("stream has no entries")
    return Fraction(sum(functional_value(s, a) for a in st.entries), len(st.entries))


def contextual_count_for(lambda_target, n: int) -> int:
    """round(n * (lam - 2) / 2), halves rounded away from zero."""
    lam = Fraction(lambda_target)
    if not 2 <= lam <= 4:
        raise TargetOutOfRange(f"target {lam} outside [2, 4]")
    x = n * (lam - 2) / 2
    return int(x + Fraction(1, 2)) if x >= 0 else -int(-x + Fraction(1, 2))


def stream_for_lambda(s: Scenario, lambda_target, n: int, seed: int = 0) -> Stream:
    k = contextual_count_for(lambda_target, n)
    return generate_stream(s, StreamSpec(n, k, seed))


def achieved_value(n: int, k: int) -> Fraction:
    return 2 + Fraction(2 * k, n)


def stream_csv(s: Scenario, st: Stream) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([v.name for v in s.variables] + ["contextual"])
    for a, flag in zip(st.entries, st.contextual_flags):
        w.writerow([f"{x:+d}" for x in a.values] + [int(flag)])
    return buf.getvalue()
