"""Exact vertex/facet conversion for small correlation polytopes.

Both directions reduce to one problem: the extreme rays of a pointed cone
``{y : A y >= 0}``, solved with the double description method on primitive
integer vectors. Facets are written ``normal . x <= offset``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .enumeration import (coordinate_names, enumerate_assignments, expectation_row,
                          functional_value, is_noncontextual)
from .errors import DegeneratePolytope, EmptyPolyhedron, UnboundedPolyhedron
from .linalg import dot, independent_rows, primitive, rank, solve
from .scenario import Scenario

RationalVector = tuple[Fraction, ...]

MAX_DIMENSION = 8
MAX_VERTICES = 64


def _vec(v) -> RationalVector:
    return tuple(Fraction(x) for x in v)


def extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone {y : row . y >= 0 for every row}.

    Rows are inserted in the given order after an initial simplicial basis
    made of the first ``d`` independent rows. Raises ValueError when the
    cone is not pointed (rows of rank < d).
    """
    rows = [primitive(r) for r in rows]
    d = len(rows[0])
    start = independent_rows(rows, d)
    if len(start) < d:
        raise ValueError(f"cone has a lineality space (row rank {len(start)} < {d})")

    basis = [rows[i] for i in start]
    rays = []
    for j in range(d):
        rhs = [1 if k == j else 0 for k in range(d)]
        rays.append(primitive(solve(basis, rhs)))

    processed = list(start)

    def zero_set(r):
        return frozenset(i for i in processed if dot(rows[i], r) == 0)

    zsets = [zero_set(r) for r in rays]
    for i in range(len(rows)):
        if i in start:
            continue
        a = rows[i]
        vals = [dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        if not neg:
            processed.append(i)
            zsets = [z | {i} if vals[k] == 0 else z for k, z in enumerate(zsets)]
            continue
        new_rays, new_z = [], []
        for k, v in enumerate(vals):
            if v >= 0:
                new_rays.append(rays[k])
                new_z.append(zsets[k] | {i} if v == 0 else zsets[k])
        for p in pos:
            for n in neg:
                common = zsets[p] & zsets[n]
                if len(common) < d - 2:
                    continue
                if any(common <= zsets[k] for k in range(len(rays)) if k not in (p, n)):
                    continue
                r = primitive([vals[p] * x - vals[n] * y for x, y in zip(rays[n], rays[p])])
                new_rays.append(r)
                new_z.append(common | {i})
        rays, zsets = new_rays, new_z
        processed.append(i)
    return rays


@dataclass(frozen=True)
class HalfSpace:
    """The inequality ``normal . x <= offset``."""

    normal: RationalVector
    offset: Fraction

    def __post_init__(self):
        if not any(self.normal):
            raise ValueError("half-space normal must be nonzero")

    @classmethod
    def canonical(cls, normal, offset) -> "HalfSpace":
        ints = primitive(list(normal) + [offset])
        return cls(_vec(ints[:-1]), Fraction(ints[-1]))

    @property
    def dimension(self) -> int:
        return len(self.normal)

    def slack(self, x) -> Fraction:
        return self.offset - dot(self.normal, x)

    def contains(self, x) -> bool:
        return self.slack(x) >= 0

    def is_tight(self, x) -> bool:
        return self.slack(x) == 0

    def sort_key(self):
        return (self.offset, self.normal)

    def __str__(self):
        terms = " ".join(_fmt(c) for c in self.normal)
        return f"[{terms}] . x <= {_fmt(self.offset)}"


def _fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def canonical_vertices(vertices) -> list[RationalVector]:
    return sorted({_vec(v) for v in vertices})


def affine_dimension(points) -> int:
    pts = [_vec(p) for p in points]
    if not pts:
        return -1
    return rank([(1,) + p for p in pts]) - 1


def facets_from_vertices(vertices) -> list[HalfSpace]:
    """Complete irredundant H-representation of conv(vertices), canonically sorted."""
    pts = canonical_vertices(vertices)
    if not pts:
        raise DegeneratePolytope(-1, 0)
    d = len(pts[0])
    if d > MAX_DIMENSION or len(pts) > MAX_VERTICES:
        raise ValueError(f"input too large: dimension {d}, {len(pts)} points "
                         f"(limits {MAX_DIMENSION}, {MAX_VERTICES})")
    hull = affine_dimension(pts)
    if hull < d:
        raise DegeneratePolytope(hull, d)
    # y = (offset, -normal) with y . (1, v) >= 0 for all v
    rays = extreme_rays([(1,) + p for p in pts])
    facets = []
    for r in rays:
        normal = tuple(-x for x in r[1:])
        if not any(normal):
            continue
        facets.append(HalfSpace.canonical(normal, r[0]))
    return sorted(set(facets), key=HalfSpace.sort_key)


def vertices_from_facets(facets: Sequence[HalfSpace]) -> list[RationalVector]:
    """Vertex list of the bounded polyhedron {x : normal . x <= offset}."""
    if not facets:
        raise UnboundedPolyhedron("no facets given")
    d = facets[0].dimension
    # (t, x) with offset*t - normal.x >= 0 and t >= 0
    rows = [(f.offset,) + tuple(-c for c in f.normal) for f in facets]
    rows.append((1,) + (0,) * d)
    try:
        rays = extreme_rays(rows)
    except ValueError as exc:
        raise UnboundedPolyhedron(str(exc)) from exc
    verts = []
    for r in rays:
        if r[0] == 0:
            raise UnboundedPolyhedron(f"recession direction {r[1:]}")
        verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
    if not verts:
        raise EmptyPolyhedron("inequalities are infeasible")
    return canonical_vertices(verts)


def restrict(facets: Sequence[HalfSpace], fixed: dict[int, Fraction]) -> list[HalfSpace]:
    """Substitute fixed coordinate values and return the inequalities on the rest.

    Inequalities that lose every variable are dropped when satisfied and
    raise when violated.
    """
    free = [i for i in range(facets[0].dimension) if i not in fixed]
    out = set()
    for f in facets:
        normal = [f.normal[i] for i in free]
        offset = f.offset - sum(f.normal[i] * Fraction(v) for i, v in fixed.items())
        if not any(normal):
            if offset < 0:
                raise EmptyPolyhedron(f"{f} is violated by the substitution")
            continue
        out.add(HalfSpace.canonical(normal, offset))
    return sorted(out, key=HalfSpace.sort_key)


def interval(facets: Sequence[HalfSpace]) -> tuple[Fraction, Fraction]:
    """Bounds (lo, hi) described by one-dimensional half-spaces."""
    if any(f.dimension != 1 for f in facets):
        raise ValueError("interval() needs one-dimensional half-spaces")
    uppers = [f.offset / f.normal[0] for f in facets if f.normal[0] > 0]
    lowers = [f.offset / f.normal[0] for f in facets if f.normal[0] < 0]
    if not uppers or not lowers:
        raise UnboundedPolyhedron("interval is unbounded")
    return max(lowers), min(uppers)


@dataclass
class Polytope:
    vertices: list[RationalVector]
    facets: list[HalfSpace]

    @classmethod
    def from_vertices(cls, vertices) -> "Polytope":
        return cls(canonical_vertices(vertices), facets_from_vertices(vertices))

    @classmethod
    def from_facets(cls, facets) -> "Polytope":
        facets = sorted({HalfSpace.canonical(f.normal, f.offset) for f in facets},
                        key=HalfSpace.sort_key)
        return cls(vertices_from_facets(facets), facets)

    @property
    def dimension(self) -> int:
        return len(self.vertices[0]) if self.vertices else self.facets[0].dimension

    def incidence_ok(self) -> bool:
        """Every vertex satisfies every facet; tightness counts are at least the dimension."""
        d = self.dimension
        for f in self.facets:
            if not all(f.contains(v) for v in self.vertices):
                return False
            if sum(f.is_tight(v) for v in self.vertices) < d:
                return False
        return all(sum(f.is_tight(v) for f in self.facets) >= d for v in self.vertices)


def resolve_projection(s: Scenario, projection) -> list[int]:
    names = coordinate_names(s)
    out = []
    for p in projection:
        if isinstance(p, str):
            if p not in names:
                raise KeyError(f"unknown coordinate {p!r}; known: {names}")
            out.append(names.index(p))
        else:
            out.append(int(p))
    return out


def context_projection(s: Scenario, context_index: int) -> list[int]:
    """Coordinates (left single, right single, joint) of one context."""
    i, j = s.context_pairs[context_index]
    return [i, j, len(s.variables) + context_index]


def joint_projection(s: Scenario) -> list[int]:
    m = len(s.variables)
    return list(range(m, m + len(s.contexts)))


def correlation_vertices(s: Scenario, projection, noncontextual_only: bool = False
                         ) -> list[RationalVector]:
    """Distinct projected expectation rows over all (or only noncontextual) assignments."""
    idx = resolve_projection(s, projection)
    pts = set()
    for a in enumerate_assignments(s):
        if noncontextual_only and not is_noncontextual(a):
            continue
        coords = expectation_row(s, a).coordinates()
        pts.add(tuple(Fraction(coords[i]) for i in idx))
    return sorted(pts)


def maximize_functional(s: Scenario, restrict_noncontextual: bool = False) -> int:
    values = [functional_value(s, a) for a in enumerate_assignments(s)
              if not restrict_noncontextual or is_noncontextual(a)]
    return max(values)


def minimize_functional(s: Scenario, restrict_noncontextual: bool = False) -> int:
    values = [functional_value(s, a) for a in enumerate_assignments(s)
              if not restrict_noncontextual or is_noncontextual(a)]
    return min(values)


def format_hrep(facets: Sequence[HalfSpace]) -> str:
    """One facet per line: ``offset n_1 ... n_d`` meaning normal . x <= offset."""
    d = facets[0].dimension if facets else 0
    lines = [f"# H-representation dim={d} facets={len(facets)} (offset normal...; normal.x <= offset)"]
    lines += [" ".join(_fmt(x) for x in (f.offset,) + f.normal) for f in facets]
    return "\n".join(lines) + "\n"


def format_vrep(vertices) -> str:
    vertices = list(vertices)
    d = len(vertices[0]) if vertices else 0
    lines = [f"# V-representation dim={d} vertices={len(vertices)}"]
    lines += [" ".join(_fmt(x) for x in v) for v in vertices]
    return "\n".join(lines) + "\n"


def _rows(text):
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            yield [Fraction(tok) for tok in line.split()]


def parse_hrep(text: str) -> list[HalfSpace]:
    return [HalfSpace(tuple(r[1:]), r[0]) for r in _rows(text)]


def parse_vrep(text: str) -> list[RationalVector]:
    return [tuple(r) for r in _rows(text)]
