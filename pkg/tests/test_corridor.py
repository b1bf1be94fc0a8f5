import pytest

from mutvis.corridor import (
    Crossing, Instance, InvalidInstance, NonCrossing, OverlappingSegments, SpansNotFacing,
    build_corridor, classify_instance, sweep_segments,
)
from mutvis.fixtures import hexagon_instance, pinched_instance, square_instance
from mutvis.geometry import Point, Segment, midpoint, orient, segment_intersection, Empty
from mutvis.polygon import in_closed_triangle, validate_simple


def test_classify_examples(square):
    assert classify_instance(square_instance()) == NonCrossing()
    assert classify_instance(hexagon_instance()) == Crossing(Point(0, 0))
    P = validate_simple([(-1, -1), (7, -1), (7, 1), (-1, 1)])
    inst = Instance(P, Segment(Point(0, 0), Point(4, 0)), Segment(Point(2, 0), Point(6, 0)),
                    (Point(0, 0),), (Point(6, 0),))
    with pytest.raises(OverlappingSegments):
        classify_instance(inst)


def test_instance_validation(square):
    S, T = Segment(Point(0, 8), Point(0, 2)), Segment(Point(10, 8), Point(10, 2))
    with pytest.raises(InvalidInstance):
        Instance(square, S, T, (Point(0, 2), Point(0, 8)), (Point(10, 2), Point(10, 8)))  # out of order
    with pytest.raises(InvalidInstance):
        Instance(square, S, T, (Point(1, 2),), (Point(10, 2),))
    with pytest.raises(InvalidInstance):
        Instance(square, S, Segment(Point(10, 8), Point(12, 2)), (Point(0, 2),), (Point(10, 8),))
    with pytest.raises(InvalidInstance):
        Instance(square, S, T, (), ())
    inst = Instance.from_robots(square, S, T, [(Point(0, 2), Point(10, 2)), (Point(0, 8), Point(10, 8))])
    assert inst.starts == (Point(0, 8), Point(0, 2))
    assert inst.targets == (Point(10, 8), Point(10, 2))


def test_square_corridor():
    c = build_corridor(square_instance())
    assert c.kind == "two_chains"
    assert {c.upper, c.lower} == {(Point(0, 8), Point(10, 8)), (Point(0, 2), Point(10, 2))}
    assert len(c.triangles) == 2
    sweeps = sweep_segments(c)
    assert len(sweeps) == 3
    assert sweeps[0] == Segment(Point(0, 8), Point(0, 2))
    assert {sweeps[-1].a, sweeps[-1].b} == {Point(10, 8), Point(10, 2)}
    assert {sweeps[1].a, sweeps[1].b} in ({Point(0, 2), Point(10, 8)}, {Point(0, 8), Point(10, 2)})


def test_pinched_corridor():
    c = build_corridor(pinched_instance())
    assert c.kind == "pinched"
    assert c.pinch == Point(6, 4)
    for path in c.paths:
        assert Point(6, 4) in path.waypoints
    assert any(s.degenerate and s.a == Point(6, 4) for s in c.sweeps)


def test_single_robot_corridor_is_one_degenerate_triangle(square):
    inst = Instance(square, Segment(Point(0, 8), Point(0, 2)), Segment(Point(10, 8), Point(10, 2)),
                    (Point(0, 8),), (Point(10, 2),))
    c = build_corridor(inst)
    assert len(c.triangles) == 1
    assert c.sweeps == (Segment(Point(0, 8), Point(0, 8)), Segment(Point(10, 2), Point(10, 2)))


def test_single_triangle_corridor(square):
    inst = Instance(square, Segment(Point(0, 8), Point(0, 2)), Segment(Point(10, 8), Point(10, 2)),
                    (Point(0, 8), Point(0, 2)), (Point(10, 5), Point(10, 5)))
    c = build_corridor(inst)
    assert c.sweeps == (Segment(Point(0, 8), Point(0, 2)), Segment(Point(10, 5), Point(10, 5)))
    assert len(c.triangles) == 1


def test_spans_not_facing_rejected():
    # one robot leaves S to the left, the other to the right
    P = validate_simple([(0, 0), (10, 0), (10, 10), (0, 10)])
    inst = Instance(P, Segment(Point(5, 1), Point(5, 5)), Segment(Point(2, 9), Point(8, 9)),
                    (Point(5, 1), Point(5, 5)), (Point(2, 9), Point(8, 9)))
    with pytest.raises(SpansNotFacing):
        build_corridor(inst)


def _in_corridor(c, p):
    return any(in_closed_triangle(p, *t) for t in c.triangles)


def test_paths_inside_corridor(small_corpus):
    for seed, inst, c, *_ in small_corpus:
        for path in c.paths:
            w = path.waypoints
            for p in w:
                assert _in_corridor(c, p), seed
            for p, q in zip(w, w[1:]):
                assert _in_corridor(c, midpoint(p, q)), seed


def test_triangles_span_both_chains(small_corpus):
    for seed, inst, c, *_ in small_corpus:
        only_u = set(c.upper) - set(c.lower)
        only_v = set(c.lower) - set(c.upper)
        for a, b, d in c.triangles:
            if orient(a, b, d) != 0:
                assert {a, b, d} & only_u and {a, b, d} & only_v, seed


def test_every_path_meets_every_sweep(small_corpus):
    for seed, inst, c, *_ in small_corpus:
        for path in c.paths:
            for sweep in c.sweeps:
                w = path.waypoints
                if sweep.degenerate:
                    hit = any(sweep.a == p for p in w) or any(
                        orient(p, q, sweep.a) == 0 and min(p, q) <= sweep.a <= max(p, q)
                        for p, q in zip(w, w[1:]))
                else:
                    hit = any(not isinstance(segment_intersection(Segment(p, q), sweep), Empty)
                              for p, q in zip(w, w[1:]) if p != q) or \
                        (len(w) == 1 and orient(sweep.a, sweep.b, w[0]) == 0)
                assert hit, seed


def test_chains_turn_one_way_per_funnel(small_corpus):
    for seed, inst, c, *_ in small_corpus:
        shared = set(c.shared)
        for chain in (c.upper, c.lower):
            pieces = [[]]
            for p in chain:
                pieces[-1].append(p)
                if p in shared:
                    pieces.append([p])
            for piece in pieces:
                turns = {orient(piece[i - 1], piece[i], piece[i + 1]) for i in range(1, len(piece) - 1)}
                assert len(turns - {0}) <= 1, seed


def test_sweeps_start_and_end_on_spans(small_corpus):
    for seed, inst, c, *_ in small_corpus:
        starts = {c.sweeps[0].a, c.sweeps[0].b}
        assert starts == {inst.starts[0], inst.starts[-1]}
        assert len(c.sweeps) == len(c.triangles) + 1
