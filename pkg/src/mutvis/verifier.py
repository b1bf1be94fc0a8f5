"""Independent certification of a solution against the raw polygon.

Nothing here trusts the corridor or the scheduler: paths are checked against
the visibility-graph oracle and visibility is sampled with exact predicates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from gmpy2 import mpq

from .corridor import Instance
from .geodesic import canonical, shortest_path_vgraph
from .geometry import (
    At,
    Empty,
    GeometryError,
    Overlap,
    Point,
    Segment,
    lerp,
    orient,
    point_on_segment,
    properly_cross,
    segment_intersection,
)
from .polygon import segment_inside

DEFAULT_SAMPLES = 10


class CountMismatch(GeometryError):
    pass


@dataclass(frozen=True)
class Violation:
    time: object
    i: int
    j: int
    witness: Segment
    blocking_edge: tuple[Point, Point] | None = None


@dataclass
class VerificationReport:
    visibility_ok: bool
    samples_per_step: int
    first_violation: Violation | None = None
    paths_ok: list[bool] = field(default_factory=list)
    times_checked: int = 0

    @property
    def ok(self) -> bool:
        return self.visibility_ok and all(self.paths_ok)


def _polylines(trajs) -> list[tuple[Point, ...]]:
    return [tuple(t.waypoints) if hasattr(t, "waypoints") else tuple(t) for t in trajs]


def normalize(points: Sequence[Point]) -> tuple[Point, ...]:
    return canonical(points)


def verify_paths(inst: Instance, trajs) -> list[bool]:
    lines = _polylines(trajs)
    if len(lines) != inst.n:
        raise CountMismatch(f"{len(lines)} trajectories for {inst.n} robots")
    out = []
    for (s, t), line in zip(inst.robots, lines):
        oracle = shortest_path_vgraph(inst.polygon, s, t).waypoints
        out.append(normalize(line) == oracle)
    return out


def convex_hull(points: Sequence[Point]) -> list[Point]:
    """Monotone chain; collinear points are dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orient(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _blocking_edge(P, seg: Segment):
    vs = P.vertices
    for i in range(len(vs)):
        c, d = vs[i], vs[(i + 1) % len(vs)]
        if properly_cross(seg.a, seg.b, c, d):
            return (c, d)
    return None


def mutually_visible(P, points: Sequence[Point]) -> bool:
    """All pairs see each other iff every convex-hull edge lies in P.

    The hull boundary is then a closed curve inside a simply connected region,
    so the whole hull, and every pairwise segment in it, lies in P.
    """
    hull = convex_hull(points)
    if len(hull) <= 1:
        return True
    if len(hull) == 2:
        return segment_inside(P, Segment(hull[0], hull[1]))
    return all(segment_inside(P, Segment(hull[i], hull[(i + 1) % len(hull)]))
               for i in range(len(hull)))


def sample_times(steps: int, samples_per_step: int) -> list:
    times = [k + mpq(j, samples_per_step) for k in range(steps) for j in range(samples_per_step)]
    times.append(mpq(steps))
    return times


def _position(line: Sequence[Point], time) -> Point:
    k = int(time)
    lam = time - k
    if k >= len(line) - 1:
        return line[-1]
    return line[k] if lam == 0 else lerp(line[k], line[k + 1], lam)


def verify_visibility(inst: Instance, trajs, samples_per_step: int = DEFAULT_SAMPLES) -> VerificationReport:
    if samples_per_step < 1:
        raise ValueError("samples_per_step must be at least 1")
    lines = _polylines(trajs)
    if len(lines) != inst.n:
        raise CountMismatch(f"{len(lines)} trajectories for {inst.n} robots")
    if len({len(line) for line in lines}) > 1:
        raise CountMismatch("trajectories have different step counts")
    P = inst.polygon
    steps = len(lines[0]) - 1
    times = sample_times(steps, samples_per_step) if steps > 0 else [mpq(0)]
    for count, time in enumerate(times, 1):
        pos = [_position(line, time) for line in lines]
        if mutually_visible(P, pos):
            continue
        for i in range(len(pos)):
            for j in range(i + 1, len(pos)):
                seg = Segment(pos[i], pos[j])
                if not segment_inside(P, seg):
                    v = Violation(time, i, j, seg, _blocking_edge(P, seg))
                    return VerificationReport(False, samples_per_step, v, times_checked=count)
        raise GeometryError("hull test failed but every pair is visible")
    return VerificationReport(True, samples_per_step, times_checked=len(times))


def verify(inst: Instance, trajs, samples_per_step: int = DEFAULT_SAMPLES) -> VerificationReport:
    report = verify_visibility(inst, trajs, samples_per_step)
    report.paths_ok = verify_paths(inst, trajs)
    return report


# -- triangle order -------------------------------------------------------

def _clip_segment(p0: Point, p1: Point, region) -> tuple | None:
    """Parameter interval of p0p1 inside a closed (possibly degenerate) triangle."""
    a, b, c = region
    o = orient(a, b, c)
    if o == 0:
        ends = sorted({a, b, c})
        if p0 == p1:
            inside = (p0 == ends[0]) if len(ends) == 1 else point_on_segment(p0, Segment(ends[0], ends[-1]))
            return (mpq(0), mpq(0)) if inside else None
        if len(ends) == 1:
            if point_on_segment(ends[0], Segment(p0, p1)):
                t = _param(p0, p1, ends[0])
                return (t, t)
            return None
        hit = segment_intersection(Segment(p0, p1), Segment(ends[0], ends[-1]))
        if isinstance(hit, Empty):
            return None
        if isinstance(hit, At):
            t = _param(p0, p1, hit.point)
            return (t, t)
        ts = sorted((_param(p0, p1, hit.segment.a), _param(p0, p1, hit.segment.b)))
        return (ts[0], ts[1])
    if o < 0:
        a, b = b, a
    lo, hi = mpq(0), mpq(1)
    for e0, e1 in ((a, b), (b, c), (c, a)):
        c0 = orient_value(e0, e1, p0)
        c1 = orient_value(e0, e1, p1)
        if c0 == c1:
            if c0 < 0:
                return None
            continue
        t = c0 / (c0 - c1)
        if c1 < c0:
            hi = min(hi, t)
        else:
            lo = max(lo, t)
        if lo > hi:
            return None
    return (lo, hi)


def orient_value(a: Point, b: Point, p: Point):
    return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)


def _param(p0: Point, p1: Point, q: Point):
    if p1.x != p0.x:
        return (q.x - p0.x) / (p1.x - p0.x)
    return (q.y - p0.y) / (p1.y - p0.y)


def segment_in_region(p0: Point, p1: Point, region) -> bool:
    got = _clip_segment(p0, p1, region)
    if got is None:
        return False
    if p0 == p1:
        return True
    return got == (0, 1)


def triangle_sequence(regions, waypoints: Sequence[Point]) -> list[int]:
    """Regions a trajectory moves through, one per step.

    Step k is assigned the smallest region index above the previous one whose
    closed region contains the whole step; -1 marks a step that fits nowhere.
    """
    out: list[int] = []
    prev = -1
    for k in range(len(waypoints) - 1):
        p0, p1 = waypoints[k], waypoints[k + 1]
        found = next((j for j in range(prev + 1, len(regions))
                      if segment_in_region(p0, p1, regions[j])), -1)
        out.append(found)
        if found >= 0:
            prev = found
    return out
