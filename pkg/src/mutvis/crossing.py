"""Analysis of instances whose start and target segments cross.

Around the crossing point q the robots split into four groups, one per
region. With a = S.a, b = S.b, c = T.a and d = T.b, and with the outermost
robot positions standing in for the segment ends, the regions are

    region 1: q, s_1, geodesic s_1 -> bottom target, bottom target   (a to d)
    region 2: q, s_1, geodesic s_1 -> top target, top target         (a to c)
    region 3: q, s_n, geodesic s_n -> top target, top target         (b to c)
    region 4: q, s_n, geodesic s_n -> bottom target, bottom target   (b to d)

where "top" is the target closest to T.a. A robot whose geodesic lies in
several closed regions goes to the lowest-numbered one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from gmpy2 import mpq

from .corridor import Crossing, Instance, classify_instance
from .geodesic import GeodesicPath, shortest_path_funnel
from .geometry import (
    GeometryError,
    NoIntersection,
    Point,
    Segment,
    cross,
    param_on,
    to_rational,
)
from .polygon import Location, SimplePolygon, point_location, segment_inside_unchecked, triangulate

MIN_ANGULAR_STEPS = 8


class NotCrossing(GeometryError):
    pass


class InvalidEps(ValueError):
    pass


@dataclass(frozen=True)
class Region:
    index: int
    start_side: Segment   # q -> outer start
    target_side: Segment  # q -> outer target
    chain: GeodesicPath

    @property
    def vertices(self) -> tuple[Point, ...]:
        return (self.start_side.a, *self.chain.waypoints)

    def contains_path(self, path: Sequence[Point]) -> bool:
        ring = SimplePolygon(self.vertices)
        if any(point_location(ring, p) is Location.EXTERIOR for p in path):
            return False
        return all(p == r or segment_inside_unchecked(ring, Segment(p, r)) for p, r in zip(path, path[1:]))


@dataclass(frozen=True)
class CrossingDecomposition:
    q: Point
    regions: tuple[Region, Region, Region, Region]
    partition: tuple[tuple[int, ...], ...]
    paths: tuple[GeodesicPath, ...]

    def group_of(self, robot: int) -> int:
        return next(g for g, members in enumerate(self.partition) if robot in members)


def _crossing_point(inst: Instance) -> Point:
    kind = classify_instance(inst)
    if not isinstance(kind, Crossing):
        raise NotCrossing("S and T do not cross")
    return kind.q


def decompose(inst: Instance, paths: Sequence[GeodesicPath] | None = None) -> CrossingDecomposition:
    q = _crossing_point(inst)
    tri = triangulate(inst.polygon)
    if paths is None:
        paths = [shortest_path_funnel(inst.polygon, tri, s, t) for s, t in inst.robots]
    by_target = sorted(inst.targets, key=lambda p: param_on(inst.T, p))
    top, bottom = by_target[0], by_target[-1]
    first, last = inst.starts[0], inst.starts[-1]

    def region(index, s, t):
        chain = shortest_path_funnel(inst.polygon, tri, s, t)
        return Region(index, Segment(q, s), Segment(q, t), chain)

    regions = (region(0, first, bottom), region(1, first, top),
               region(2, last, top), region(3, last, bottom))
    groups: list[list[int]] = [[], [], [], []]
    for i, path in enumerate(paths):
        home = next((r.index for r in regions if r.contains_path(path.waypoints)), None)
        if home is None:
            raise GeometryError(f"geodesic of robot {i} lies in no region")
        groups[home].append(i)
    return CrossingDecomposition(q, regions, tuple(map(tuple, groups)), tuple(paths))


# -- strip width ----------------------------------------------------------

def hexagon_vertices(eps) -> list[Point]:
    """Thin hexagon whose waist at x = 0 has half-height eps (counter-clockwise)."""
    eps = to_rational(eps)
    if eps <= 0:
        raise InvalidEps("eps must be positive")
    return [Point(-10, 1), Point(-10, -1), Point(0, -eps),
            Point(10, -1), Point(10, 1), Point(0, eps)]


def strip_width(eps) -> float:
    """Width of the band that robots near opposite corners must share to see each other.

    One side is the sight line from the top-left corner through the lower waist
    vertex, the other the sight line from the bottom-right corner through the
    upper waist vertex. The hexagon is point-symmetric, so the lines are parallel.
    """
    left_top, _, waist_low, right_bottom, _, waist_high = hexagon_vertices(eps)
    dx, dy = waist_low.x - left_top.x, waist_low.y - left_top.y
    if dx * (waist_high.y - right_bottom.y) != dy * (waist_high.x - right_bottom.x):
        raise GeometryError("strip sides are not parallel")
    gap = abs(cross(left_top, waist_low, waist_high))
    return float(gap) / math.sqrt(float(dx * dx + dy * dy))


# -- critical points ------------------------------------------------------

class CarrierPosition(NamedTuple):
    segment: int
    t: object  # rational parameter within the segment

    def before(self, other: "CarrierPosition") -> bool:
        return (self.segment, self.t) < (other.segment, other.t)


def _line_hits(a: Point, b: Point, p0: Point, p1: Point):
    """Parameters in [0, 1] where p0p1 meets the line through a and b."""
    c0, c1 = cross(a, b, p0), cross(a, b, p1)
    if c0 == 0 and c1 == 0:
        return [mpq(0), mpq(1)]
    if (c0 > 0 and c1 > 0) or (c0 < 0 and c1 < 0):
        return []
    return [c0 / (c0 - c1)]


def carrier_position(carrier: GeodesicPath, p: Point) -> CarrierPosition:
    pts = carrier.waypoints
    for j in range(len(pts) - 1):
        seg = Segment(pts[j], pts[j + 1])
        if not seg.degenerate and cross(seg.a, seg.b, p) == 0:
            t = param_on(seg, p)
            if 0 <= t <= 1:
                return CarrierPosition(j, t)
    raise NoIntersection(f"{p} is not on the carrier")


def critical_points(chain: GeodesicPath, blocking_edge: tuple[Point, Point],
                    carrier: GeodesicPath) -> Point:
    """First point along the carrier hit by the line through the blocking edge."""
    u, v = blocking_edge
    pts = list(chain.waypoints)
    if not any({pts[k], pts[k + 1]} == {u, v} for k in range(len(pts) - 1)) or u == v:
        raise ValueError("blocking edge is not an edge of the chain")
    route = carrier.waypoints
    for j in range(len(route) - 1):
        hits = _line_hits(u, v, route[j], route[j + 1])
        if hits:
            t = min(hits)
            p0, p1 = route[j], route[j + 1]
            return Point(p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y))
    raise NoIntersection("blocking edge line misses the carrier")


@dataclass(frozen=True)
class CriticalPoints:
    points: dict          # label -> Point
    carriers: dict        # label -> region index whose chain carries the point

    def before(self, early: str, late: str, decomposition: CrossingDecomposition) -> bool:
        chain = decomposition.regions[self.carriers[early]].chain
        if self.carriers[late] != self.carriers[early]:
            raise ValueError("points lie on different carriers")
        return carrier_position(chain, self.points[early]).before(
            carrier_position(chain, self.points[late]))


def deadlock_critical_points(dec: CrossingDecomposition) -> CriticalPoints | None:
    """x, y on the region-2 chain and x', y' on the region-1 chain, when the chains bend enough.

    x  : line of the edge into the last bend of chain 1, on chain 2
    y  : line of the first edge of chain 3, on chain 2
    x' : line of the edge into the last bend of chain 2, on chain 1
    y' : line of the first edge of chain 4, on chain 1
    """
    chains = [r.chain for r in dec.regions]
    specs = {
        "x": (0, "last", 1), "y": (2, "first", 1),
        "x'": (1, "last", 0), "y'": (3, "first", 0),
    }
    points, carriers = {}, {}
    for label, (source, which, carrier) in specs.items():
        pts = chains[source].waypoints
        if which == "last":
            if len(pts) < 4:
                continue
            edge = (pts[-3], pts[-2])
        else:
            if len(pts) < 3:
                continue
            edge = (pts[0], pts[1])
        try:
            points[label] = critical_points(chains[source], edge, chains[carrier])
        except NoIntersection:
            continue
        carriers[label] = carrier
    if not points:
        return None
    return CriticalPoints(points, carriers)


# -- rotating line --------------------------------------------------------

class Completed(NamedTuple):
    steps: int


class Stuck(NamedTuple):
    step: int
    angle: float          # radians, direction of the pivot line
    witness: tuple[int, int]
    blocked: int | None   # robot left with no visible position, if any


def _last_on_line(path: Sequence[Point], q: Point, direction: Point) -> Point | None:
    far = Point(q.x + direction.x, q.y + direction.y)
    found = None
    if len(path) == 1:
        return path[0] if cross(q, far, path[0]) == 0 else None
    for p0, p1 in zip(path, path[1:]):
        hits = _line_hits(q, far, p0, p1)
        if hits:
            t = max(hits)
            found = Point(p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y))
    return found


def _sees(P: SimplePolygon, p: Point, r: Point) -> bool:
    return p == r or segment_inside_unchecked(P, Segment(p, r))


def _candidates(P: SimplePolygon, path: Sequence[Point], observers: Sequence[Point]) -> list[Point]:
    """Points of the path where visibility from some observer can change, plus midpoints between them."""
    out: list[Point] = []
    segs = list(zip(path, path[1:])) or [(path[0], path[0])]
    for p0, p1 in segs:
        ts = {mpq(0), mpq(1)}
        if p0 != p1:
            for o in observers:
                for v in P.vertices:
                    if v != o:
                        ts.update(_line_hits(o, v, p0, p1))
        ts = sorted(ts)
        mids = [(s + t) / 2 for s, t in zip(ts, ts[1:])]
        for t in sorted(ts + mids):
            out.append(Point(p0.x + t * (p1.x - p0.x), p0.y + t * (p1.y - p0.y)))
    return out


def _feasible(P, path, observers) -> bool:
    return any(all(_sees(P, z, o) for o in observers) for z in _candidates(P, path, observers))


def rotating_line_run(inst: Instance, angular_steps: int, pivot: str = "R1R3",
                      decomposition: CrossingDecomposition | None = None):
    """Move the pivot groups on a line through q, rotating from S towards T.

    At each of the ``angular_steps`` + 1 angles the pivot robots sit where
    their geodesics last meet the line. The run is stuck when two of them
    cannot see each other, or when some other robot has no point on its
    geodesic visible to all of them.
    """
    if angular_steps < MIN_ANGULAR_STEPS:
        raise ValueError(f"angular_steps must be at least {MIN_ANGULAR_STEPS}")
    dec = decomposition or decompose(inst)
    q, P = dec.q, inst.polygon
    if pivot == "R1R3":
        groups, end = (0, 2), inst.T.b
    elif pivot == "R2R4":
        groups, end = (1, 3), inst.T.a
    else:
        raise ValueError("pivot must be 'R1R3' or 'R2R4'")
    pivoting = sorted(i for g in groups for i in dec.partition[g])
    others = [i for i in range(inst.n) if i not in pivoting]
    start_dir = inst.S.a - q
    end_dir = end - q
    for k in range(angular_steps + 1):
        lam = mpq(k, angular_steps)
        direction = start_dir * (1 - lam) + end_dir * lam
        angle = math.atan2(float(direction.y), float(direction.x))
        placed = {}
        for i in pivoting:
            p = _last_on_line(dec.paths[i].waypoints, q, direction)
            if p is None:
                raise NoIntersection(f"robot {i} never meets the pivot line at step {k}")
            placed[i] = p
        for x, i in enumerate(pivoting):
            for j in pivoting[x + 1:]:
                if not _sees(P, placed[i], placed[j]):
                    return Stuck(k, angle, (i, j), None)
        for r in others:
            path = dec.paths[r].waypoints
            if _feasible(P, path, list(placed.values())):
                continue
            for x, i in enumerate(pivoting):
                for j in pivoting[x + 1:]:
                    if not _feasible(P, path, [placed[i], placed[j]]):
                        return Stuck(k, angle, (i, j), r)
            return Stuck(k, angle, (pivoting[0], pivoting[-1]), r)
    return Completed(angular_steps)
