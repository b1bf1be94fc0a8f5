import random

import pytest
from gmpy2 import mpq
from hypothesis import assume, given, strategies as st

from mutvis.generator import GenerationFailed, random_polygon
from mutvis.geometry import At, Overlap, Point, Segment, lerp, segment_intersection, signed_area2
from mutvis.polygon import (
    BOUNDARY, EXTERIOR, INTERIOR, EndpointOutside, NotSimple, TooFewVertices, ZeroArea,
    point_location, segment_inside, triangulate, validate_simple,
)

# Rectilinear comb: many collinear edges and reflex corners at equal heights.
COMB = [(0, 0), (12, 0), (12, 6), (10, 6), (10, 2), (8, 2), (8, 6), (6, 6),
        (6, 2), (4, 2), (4, 6), (2, 6), (2, 2), (0, 2)]


def polygons():
    def build(seed, m):
        try:
            return validate_simple(random_polygon(random.Random(seed), m, coord_max=40))
        except GenerationFailed:
            return None
    fixed = st.sampled_from([COMB, [(0, 0), (10, 0), (10, 10), (6, 10), (6, 4), (0, 4)]]).map(validate_simple)
    rand = st.builds(build, st.integers(0, 10**6), st.integers(4, 12)).filter(lambda p: p is not None)
    return st.one_of(fixed, rand)


def inside_point(draw, P):
    xs = [v.x for v in P.vertices]
    ys = [v.y for v in P.vertices]
    frac = st.fractions(0, 1, max_denominator=8)
    p = Point(min(xs) + draw(frac) * (max(xs) - min(xs)), min(ys) + draw(frac) * (max(ys) - min(ys)))
    assume(point_location(P, p) is not EXTERIOR)
    return p


def brute_segment_inside(P, s):
    """Split s at every boundary contact and test each piece's midpoint."""
    ts = {mpq(0), mpq(1)}
    d = s.b - s.a
    for i, a in enumerate(P.vertices):
        e = Segment(a, P.vertices[(i + 1) % len(P.vertices)])
        hit = segment_intersection(s, e)
        found = [hit.point] if isinstance(hit, At) else [hit.segment.a, hit.segment.b] if isinstance(hit, Overlap) else []
        for p in found:
            ts.add((p.x - s.a.x) / d.x if d.x else (p.y - s.a.y) / d.y)
    ts = sorted(ts)
    checks = [lerp(s.a, s.b, t) for t in ts] + [lerp(s.a, s.b, (t0 + t1) / 2) for t0, t1 in zip(ts, ts[1:])]
    return all(point_location(P, p) is not EXTERIOR for p in checks)


def test_square_valid(square):
    assert square.vertices == tuple(Point(*v) for v in [(0, 0), (10, 0), (10, 10), (0, 10)])


def test_clockwise_square_reversed():
    P = validate_simple([(0, 10), (10, 10), (10, 0), (0, 0)])
    assert signed_area2(P.vertices) > 0
    assert set(P.vertices) == {Point(0, 0), Point(10, 0), Point(10, 10), Point(0, 10)}


def test_bowtie_not_simple():
    with pytest.raises(NotSimple) as err:
        validate_simple([(0, 0), (2, 2), (2, 0), (0, 2)])
    assert err.value.edges


@pytest.mark.parametrize("verts, error", [
    ([(0, 0), (1, 1)], TooFewVertices),
    ([(0, 0), (1, 1), (2, 2)], ZeroArea),
    ([(0, 0), (4, 0), (4, 4), (2, 0), (0, 4)], NotSimple),  # vertex touching an edge
    ([(0, 0), (4, 0), (4, 4), (4, 4), (0, 4)], NotSimple),  # repeated vertex
])
def test_invalid_polygons(verts, error):
    with pytest.raises(error):
        validate_simple(verts)


@pytest.mark.parametrize("p, loc", [((5, 5), INTERIOR), ((10, 5), BOUNDARY), ((11, 5), EXTERIOR),
                                    ((0, 0), BOUNDARY), ((10, 11), EXTERIOR)])
def test_point_location_examples(square, p, loc):
    assert point_location(square, Point(*p)) is loc


def test_segment_inside_examples(square, l_shape):
    assert segment_inside(square, Segment(Point(1, 1), Point(9, 9)))
    assert not segment_inside(l_shape, Segment(Point(1, 3), Point(9, 9)))
    assert segment_inside(l_shape, Segment(Point(1, 3), Point(6, 4)))


def test_segment_inside_boundary_cases(l_shape):
    # along an edge, and across the notch between two boundary points
    assert segment_inside(l_shape, Segment(Point(0, 4), Point(6, 4)))
    assert not segment_inside(l_shape, Segment(Point(6, 10), Point(0, 4)))
    comb = validate_simple(COMB)
    assert segment_inside(comb, Segment(Point(0, 2), Point(12, 2)))
    assert not segment_inside(comb, Segment(Point(2, 6), Point(12, 6)))
    with pytest.raises(EndpointOutside):
        segment_inside(l_shape, Segment(Point(1, 1), Point(9, 3 + 10)))


@pytest.mark.parametrize("verts, count", [
    ([(0, 0), (10, 0), (10, 10), (0, 10)], 2),
    ([(2, 0), (4, 0), (6, 2), (4, 4), (2, 4), (0, 2)], 4),
    ([(0, 0), (10, 0), (10, 10), (6, 10), (6, 4), (0, 4)], 4),
])
def test_triangle_counts(verts, count):
    P = validate_simple(verts)
    tri = triangulate(P)
    assert len(tri) == count
    for t in range(len(tri)):
        a, b, c = tri.points(t)
        centroid = Point((a.x + b.x + c.x) / 3, (a.y + b.y + c.y) / 3)
        assert point_location(P, centroid) is INTERIOR


def test_triangulation_with_straight_vertices():
    P = validate_simple([(0, 0), (5, 0), (10, 0), (10, 10), (0, 10)])
    tri = triangulate(P)
    assert len(tri) == 3
    assert sum(signed_area2(tri.points(t)) for t in range(len(tri))) == P.area2


@given(polygons())
def test_triangulation_area_and_adjacency(P):
    tri = triangulate(P)
    assert len(tri) == len(P) - 2
    assert sum(signed_area2(tri.points(t)) for t in range(len(tri))) == P.area2
    for t in range(len(tri)):
        assert signed_area2(tri.points(t)) >= 0
        for k, nb in enumerate(tri.adjacency[t]):
            if nb >= 0:
                assert t in tri.adjacency[nb]


@given(polygons(), st.data())
def test_point_location_rotation_invariant(P, data):
    p = Point(data.draw(st.integers(-2, 42)), data.draw(st.integers(-2, 42)))
    k = data.draw(st.integers(0, len(P) - 1))
    rotated = validate_simple(P.vertices[k:] + P.vertices[:k])
    assert point_location(P, p) is point_location(rotated, p)


@given(polygons(), st.data())
def test_segment_inside_matches_brute_force(P, data):
    p = inside_point(data.draw, P)
    q = inside_point(data.draw, P)
    assume(p != q)
    assert segment_inside(P, Segment(p, q)) == brute_segment_inside(P, Segment(p, q))


@given(polygons(), st.data())
def test_vertex_to_vertex_visibility_matches_brute_force(P, data):
    i = data.draw(st.integers(0, len(P) - 1))
    j = data.draw(st.integers(0, len(P) - 1))
    assume(i != j)
    s = Segment(P.vertices[i], P.vertices[j])
    assert segment_inside(P, s) == brute_segment_inside(P, s)
