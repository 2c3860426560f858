import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ksctx.enumeration import enumerate_assignments, expectation_row
from ksctx.errors import DegeneratePolytope, EmptyPolyhedron, UnboundedPolyhedron
from ksctx.polytope import (HalfSpace, Polytope, canonical_vertices, context_projection,
                            correlation_vertices, facets_from_vertices, format_hrep, format_vrep,
                            interval, joint_projection, maximize_functional,
                            minimize_functional, parse_hrep, parse_vrep, restrict,
                            vertices_from_facets)
from ksctx.scenario import parse_scenario

F = Fraction
SQUARE = [(x, y) for x in (-1, 1) for y in (-1, 1)]
CUBE = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]


def hs(normal, offset):
    return HalfSpace.canonical(normal, offset)


def brute_force_facets(points):
    """Facets as hyperplanes through d affinely independent points with all points on one side."""
    pts = [tuple(F(x) for x in p) for p in set(map(tuple, points))]
    d = len(pts[0])
    found = set()
    for subset in itertools.combinations(pts, d):
        m = sympy.Matrix([[1, *(-sympy.Rational(x.numerator, x.denominator) for x in p)]
                          for p in subset])
        null = m.nullspace()
        if len(null) != 1:
            continue
        y = [F(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in null[0]]
        offset, normal = y[0], y[1:]
        side = [offset - sum(n * x for n, x in zip(normal, p)) for p in pts]
        if all(v >= 0 for v in side):
            found.add(hs(normal, offset))
        elif all(v <= 0 for v in side):
            found.add(hs([-n for n in normal], -offset))
    return sorted(found, key=HalfSpace.sort_key)


def test_single_context_vertices(chsh):
    verts = correlation_vertices(chsh, context_projection(chsh, 0))
    assert verts == canonical_vertices([(x, y, x * y) for x in (-1, 1) for y in (-1, 1)])


def test_named_projection(chsh):
    assert correlation_vertices(chsh, ["a_b", "b_a", "a_b*b_a"]) == \
        correlation_vertices(chsh, context_projection(chsh, 0))
    with pytest.raises(KeyError):
        correlation_vertices(chsh, ["nope"])


def test_one_dimensional_projection(chsh):
    assert correlation_vertices(chsh, [0]) == [(F(-1),), (F(1),)]


def test_joint_projection_noncontextual_has_eight_vertices(chsh):
    # oracle: dedup the joint columns of the 16 noncontextual rows by hand
    rows = {expectation_row(chsh, a).joints for a in enumerate_assignments(chsh)
            if len({a["a_b"], a["a_b'"]}) == 1 and len({a["a'_b"], a["a'_b'"]}) == 1
            and len({a["b_a"], a["b_a'"]}) == 1 and len({a["b'_a"], a["b'_a'"]}) == 1}
    assert len(rows) == 8
    verts = correlation_vertices(chsh, joint_projection(chsh), noncontextual_only=True)
    assert len(verts) == 8
    assert set(verts) == {tuple(map(F, r)) for r in rows}


def eq4_facets():
    # -1 <= s1 x + s2 y + s1 s2 z, i.e. -(s1, s2, s1 s2) . x <= 1
    return sorted({hs((-s1, -s2, -s1 * s2), 1) for s1 in (1, -1) for s2 in (1, -1)},
                  key=HalfSpace.sort_key)


@pytest.mark.parametrize("k", range(4))
def test_eq4_facets_every_context(chsh, k):
    facets = facets_from_vertices(correlation_vertices(chsh, context_projection(chsh, k)))
    assert facets == eq4_facets()


def test_reduction_to_joint_bounds(chsh):
    facets = facets_from_vertices(correlation_vertices(chsh, context_projection(chsh, 0)))
    reduced = restrict(facets, {0: 0, 1: 0})
    assert reduced == [hs((-1,), 1), hs((1,), 1)]
    assert interval(reduced) == (-1, 1)


def test_reduction_symbolic():
    x, y, z = sympy.symbols("x y z")
    lhs = [s1 * x + s2 * y + s1 * s2 * z for s1 in (1, -1) for s2 in (1, -1)]
    reduced = {sympy.simplify(e.subs({x: 0, y: 0})) for e in lhs}
    assert reduced == {z, -z}  # -1 <= z and -1 <= -z


def test_segment_and_square():
    assert facets_from_vertices([(-1,), (1,)]) == [hs((-1,), 1), hs((1,), 1)]
    sq = facets_from_vertices(SQUARE)
    assert sq == sorted({hs((1, 0), 1), hs((-1, 0), 1), hs((0, 1), 1), hs((0, -1), 1)},
                        key=HalfSpace.sort_key)


def test_vertices_from_facets_basic():
    assert vertices_from_facets([hs((1,), 1), hs((-1,), 1)]) == [(F(-1),), (F(1),)]
    cube_facets = [hs(tuple(s if k == i else 0 for k in range(3)), 1)
                   for i in range(3) for s in (1, -1)]
    assert vertices_from_facets(cube_facets) == canonical_vertices(CUBE)
    assert vertices_from_facets(eq4_facets()) == canonical_vertices(
        [(x, y, x * y) for x in (-1, 1) for y in (-1, 1)])


@pytest.mark.parametrize("points", [SQUARE, CUBE, [(x, y, x * y) for x in (-1, 1) for y in (-1, 1)]])
def test_roundtrips(points):
    verts = canonical_vertices(points)
    facets = facets_from_vertices(verts)
    assert vertices_from_facets(facets) == verts
    assert facets_from_vertices(vertices_from_facets(facets)) == facets


def test_chsh_correlator_polytope_against_brute_force(chsh):
    verts = correlation_vertices(chsh, joint_projection(chsh), noncontextual_only=True)
    facets = facets_from_vertices(verts)
    assert facets == brute_force_facets(verts)
    assert len(facets) == 16
    chsh_like = [f for f in facets if f.offset == 2]
    assert len(chsh_like) == 8
    assert hs((-1, -1, -1, 1), 2) in facets  # -2 <= E(a,b)+E(a,b')+E(a',b)-E(a',b')


def test_all_assignments_satisfy_context_facets(chsh):
    rows = [expectation_row(chsh, a).coordinates() for a in enumerate_assignments(chsh)]
    for k in range(4):
        proj = context_projection(chsh, k)
        facets = facets_from_vertices(correlation_vertices(chsh, proj))
        for row in rows:
            assert all(f.contains([row[i] for i in proj]) for f in facets)


def test_incidence(chsh):
    for pts in (SQUARE, CUBE, correlation_vertices(chsh, joint_projection(chsh), True)):
        assert Polytope.from_vertices(pts).incidence_ok()
    assert Polytope.from_facets(eq4_facets()).incidence_ok()


def test_degenerate_input_reports_hull_dimension():
    with pytest.raises(DegeneratePolytope) as info:
        facets_from_vertices([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert info.value.hull_dimension == 2
    assert info.value.ambient_dimension == 3


def test_unbounded_and_empty():
    with pytest.raises(UnboundedPolyhedron):
        vertices_from_facets([hs((1, 0), 1), hs((-1, 0), 1)])
    with pytest.raises(UnboundedPolyhedron):
        vertices_from_facets([hs((1,), 1)])
    with pytest.raises(EmptyPolyhedron):
        vertices_from_facets([hs((1,), -1), hs((-1,), -1)])


def test_canonical_scaling():
    f = HalfSpace.canonical((F(2), F(-4)), F(6))
    assert f.normal == (1, -2) and f.offset == 3
    f = HalfSpace.canonical((F(1, 2), F(1, 3)), F(1))
    assert f.normal == (3, 2) and f.offset == 6


def test_text_formats_roundtrip():
    facets = eq4_facets()
    text = format_hrep(facets)
    assert text.splitlines()[0].startswith("# H-representation dim=3 facets=4")
    assert parse_hrep(text) == facets
    verts = canonical_vertices(CUBE)
    assert parse_vrep(format_vrep(verts)) == verts
    assert format_vrep(verts).splitlines()[1] == "-1 -1 -1"


def test_maximize_functional(chsh):
    assert maximize_functional(chsh, restrict_noncontextual=True) == 2
    assert maximize_functional(chsh, restrict_noncontextual=False) == 4
    assert minimize_functional(chsh, True) == -2
    assert minimize_functional(chsh, False) == -4


def test_maximize_all_plus_functional():
    s = parse_scenario("""
        observable Left a
        observable Left a'
        observable Right b
        observable Right b'
        context a b
        context a b'
        context a' b
        context a' b'
        functional a b +1
        functional a b' +1
        functional a' b +1
        functional a' b' +1
    """)
    # brute force over the 16 noncontextual assignments
    best = max(x * y + x * y2 + x2 * y + x2 * y2
               for x, x2, y, y2 in itertools.product((-1, 1), repeat=4))
    assert best == 4
    assert maximize_functional(s, restrict_noncontextual=True) == 4


point3 = st.tuples(*[st.integers(-3, 3)] * 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(point3, min_size=4, max_size=9, unique=True))
def test_random_point_sets_match_brute_force(points):
    from ksctx.polytope import affine_dimension
    if affine_dimension(points) < 3:
        with pytest.raises(DegeneratePolytope):
            facets_from_vertices(points)
        return
    facets = facets_from_vertices(points)
    assert facets == brute_force_facets(points)
    verts = vertices_from_facets(facets)
    assert set(verts) <= set(canonical_vertices(points))
    assert facets_from_vertices(verts) == facets
    assert all(f.contains(p) for f in facets for p in points)
