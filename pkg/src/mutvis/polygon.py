"""Simple polygons: validation, point location, visibility and ear clipping."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from gmpy2 import mpq

from .geometry import (
    Empty,
    GeometryError,
    Overlap,
    Point,
    Segment,
    lerp,
    orient,
    param_on,
    point_on_segment,
    segment_intersection,
    signed_area2,
)


class PolygonError(GeometryError):
    pass


class NotSimple(PolygonError):
    def __init__(self, message, edges=None):
        super().__init__(message)
        self.edges = edges


class TooFewVertices(PolygonError):
    pass


class ZeroArea(PolygonError):
    pass


class EndpointOutside(PolygonError):
    pass


class Location(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


INTERIOR = Location.INTERIOR
BOUNDARY = Location.BOUNDARY
EXTERIOR = Location.EXTERIOR


def _bbox(a: Point, b: Point):
    return (min(a.x, b.x), max(a.x, b.x), min(a.y, b.y), max(a.y, b.y))


@dataclass(frozen=True)
class SimplePolygon:
    """Counterclockwise simple polygon. Build through :func:`validate_simple`."""

    vertices: tuple[Point, ...]

    def __len__(self):
        return len(self.vertices)

    @cached_property
    def edges(self) -> tuple[tuple[Point, Point, tuple], ...]:
        vs = self.vertices
        return tuple((vs[i], vs[(i + 1) % len(vs)], _bbox(vs[i], vs[(i + 1) % len(vs)]))
                     for i in range(len(vs)))

    @cached_property
    def reflex_indices(self) -> tuple[int, ...]:
        vs = self.vertices
        n = len(vs)
        return tuple(i for i in range(n) if orient(vs[i - 1], vs[i], vs[(i + 1) % n]) < 0)

    @cached_property
    def area2(self):
        return signed_area2(self.vertices)

    def point_location(self, p: Point) -> Location:
        return locate(self.vertices, p)

    def contains(self, p: Point) -> bool:
        return locate(self.vertices, p) is not EXTERIOR


def locate(vertices: Sequence[Point], p: Point) -> Location:
    """Crossing-number point location against any closed vertex ring."""
    px, py = p
    inside = False
    n = len(vertices)
    a = vertices[n - 1]
    for i in range(n):
        b = vertices[i]
        ay_above = a.y > py
        if ay_above != (b.y > py):
            o = orient(a, b, p)
            if o == 0:
                return BOUNDARY
            # upward edge with p on its left, or downward with p on its right
            if (o > 0) == (b.y > a.y):
                inside = not inside
        elif (a.y == py or b.y == py) and point_on_segment(p, Segment(a, b)):
            return BOUNDARY
        a = b
    return INTERIOR if inside else EXTERIOR


def point_location(P: SimplePolygon, p: Point) -> Location:
    return locate(P.vertices, p)


def validate_simple(vertices: Sequence) -> SimplePolygon:
    pts = [v if isinstance(v, Point) else Point(*v) for v in vertices]
    n = len(pts)
    if n < 3:
        raise TooFewVertices(f"polygon needs at least 3 vertices, got {n}")
    for i in range(n):
        if pts[i] == pts[(i + 1) % n]:
            raise NotSimple(f"consecutive vertices {i} and {(i + 1) % n} coincide",
                            edges=(i, (i + 1) % n))
    if all(orient(pts[0], pts[1], p) == 0 for p in pts[2:]):
        raise ZeroArea("all vertices are collinear")
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    boxes = [_bbox(a, b) for a, b in edges]
    for i in range(n):
        bi = boxes[i]
        for j in range(i + 1, n):
            bj = boxes[j]
            if bi[1] < bj[0] or bj[1] < bi[0] or bi[3] < bj[2] or bj[3] < bi[2]:
                continue
            hit = segment_intersection(Segment(*edges[i]), Segment(*edges[j]))
            if isinstance(hit, Empty):
                continue
            adjacent = j == i + 1 or (i == 0 and j == n - 1)
            if adjacent and not isinstance(hit, Overlap):
                continue
            if n == 3 and not isinstance(hit, Overlap):
                continue
            raise NotSimple(f"edges {i} and {j} intersect", edges=(i, j))
    area2 = signed_area2(pts)
    if area2 == 0:
        raise ZeroArea("polygon has zero signed area")
    if area2 < 0:
        pts.reverse()
    return SimplePolygon(tuple(pts))


def segment_inside(P: SimplePolygon, s: Segment) -> bool:
    """Is the closed segment contained in the closed polygon?"""
    a, b = s
    if P.point_location(a) is EXTERIOR or P.point_location(b) is EXTERIOR:
        raise EndpointOutside(f"segment endpoint outside polygon: {s}")
    return segment_inside_unchecked(P, s)


def segment_inside_unchecked(P: SimplePolygon, s: Segment) -> bool:
    """:func:`segment_inside` for endpoints already known to lie in the closed polygon."""
    a, b = s
    if a == b:
        return True
    sx0, sx1 = (a.x, b.x) if a.x <= b.x else (b.x, a.x)
    sy0, sy1 = (a.y, b.y) if a.y <= b.y else (b.y, a.y)
    params = {mpq(0), mpq(1)}
    for c, d, (ex0, ex1, ey0, ey1) in P.edges:
        if ex1 < sx0 or sx1 < ex0 or ey1 < sy0 or sy1 < ey0:
            continue
        o1 = orient(a, b, c)
        o2 = orient(a, b, d)
        if o1 * o2 > 0:
            continue
        o3 = orient(c, d, a)
        o4 = orient(c, d, b)
        if o3 * o4 > 0:
            continue
        if o1 and o2 and o3 and o4:
            return False
        if o1 == 0 and o2 == 0:
            for e in (c, d):
                t = param_on(s, e)
                if 0 < t < 1:
                    params.add(t)
            continue
        if o1 == 0:
            params.add(param_on(s, c))
        if o2 == 0:
            params.add(param_on(s, d))
    ts = sorted(params)
    half = mpq(1, 2)
    for t0, t1 in zip(ts, ts[1:]):
        if locate(P.vertices, lerp(a, b, (t0 + t1) * half)) is EXTERIOR:
            return False
    return True


@dataclass(frozen=True)
class Triangulation:
    polygon: SimplePolygon
    triangles: tuple[tuple[int, int, int], ...]
    # adjacency[t][k]: triangle across edge (tri[k], tri[k+1]), or -1 on the boundary
    adjacency: tuple[tuple[int, int, int], ...] = field(repr=False)

    def points(self, t: int) -> tuple[Point, Point, Point]:
        vs = self.polygon.vertices
        i, j, k = self.triangles[t]
        return vs[i], vs[j], vs[k]

    def __len__(self):
        return len(self.triangles)


def in_closed_triangle(p: Point, a: Point, b: Point, c: Point) -> bool:
    """Closed containment in a triangle of either orientation, or a degenerate one."""
    o = orient(a, b, c)
    if o == 0:
        return (point_on_segment(p, Segment(a, b)) or point_on_segment(p, Segment(b, c))
                or point_on_segment(p, Segment(a, c)))
    if o < 0:
        b, c = c, b
    return orient(a, b, p) >= 0 and orient(b, c, p) >= 0 and orient(c, a, p) >= 0


def triangulate(P: SimplePolygon) -> Triangulation:
    """Ear clipping. Zero-area ears only appear at straight (collinear) vertices."""
    vs = P.vertices
    n = len(vs)
    prev = [(i - 1) % n for i in range(n)]
    nxt = [(i + 1) % n for i in range(n)]
    alive = [True] * n

    def convexity(i):
        return orient(vs[prev[i]], vs[i], vs[nxt[i]])

    # only non-convex vertices can block an ear
    blockers = {i for i in range(n) if convexity(i) <= 0}

    def is_ear(i):
        a, c = prev[i], nxt[i]
        if orient(vs[a], vs[i], vs[c]) <= 0:
            return False
        pa, pb, pc = vs[a], vs[i], vs[c]
        for j in blockers:
            if j == a or j == i or j == c:
                continue
            if in_closed_triangle(vs[j], pa, pb, pc):
                return False
        return True

    def clip(i):
        a, c = prev[i], nxt[i]
        triangles.append((a, i, c))
        nxt[a] = c
        prev[c] = a
        alive[i] = False
        blockers.discard(i)
        for k in (a, c):
            if convexity(k) > 0:
                blockers.discard(k)
            else:
                blockers.add(k)

    triangles: list[tuple[int, int, int]] = []
    remaining = n
    i = 0
    stall = 0
    while remaining > 3:
        if is_ear(i):
            nxt_i = nxt[i]
            clip(i)
            remaining -= 1
            i = nxt_i
            stall = 0
            continue
        i = nxt[i]
        stall += 1
        if stall > remaining:
            straight = next((k for k in range(n) if alive[k] and convexity(k) == 0), None)
            if straight is None:
                raise PolygonError("ear clipping stalled; polygon is not simple")
            nxt_i = nxt[straight]
            clip(straight)
            remaining -= 1
            i = nxt_i
            stall = 0
    a = next(k for k in range(n) if alive[k])
    triangles.append((prev[a], a, nxt[a]))

    owner: dict[tuple[int, int], list[int]] = {}
    for t, tri in enumerate(triangles):
        for k in range(3):
            e = tri[k], tri[(k + 1) % 3]
            owner.setdefault((min(e), max(e)), []).append(t)
    adjacency = []
    for t, tri in enumerate(triangles):
        row = []
        for k in range(3):
            e = tri[k], tri[(k + 1) % 3]
            users = owner[(min(e), max(e))]
            row.append(next((u for u in users if u != t), -1))
        adjacency.append(tuple(row))
    return Triangulation(P, tuple(triangles), tuple(adjacency))
