"""Synchronised sweep schedule: all robots advance together, one corridor
triangle per step, each along its own geodesic."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpq

from .corridor import Corridor, Crossing, Instance, build_corridor, classify_instance
from .geodesic import GeodesicPath, shortest_path_funnel
from .geometry import At, Empty, GeometryError, NoIntersection, Overlap, Point, Segment, lerp, param_on, point_on_segment, segment_intersection
from .polygon import triangulate


class CrossingInstance(GeometryError):
    pass


class TimeOutOfRange(ValueError):
    pass


INIT, CASE_A, CASE_B, CASE_C, CASE_D, SLIDE = "Init", "A", "B", "C", "D", "Slide"


@dataclass(frozen=True)
class Schedule:
    sweeps: tuple[Segment, ...]
    case_tags: tuple[str, ...]
    # convex region swept during each step (a triangle, possibly degenerate)
    regions: tuple[tuple[Point, Point, Point], ...]

    @property
    def steps(self) -> int:
        return len(self.case_tags)


@dataclass(frozen=True)
class Trajectory:
    robot_index: int
    waypoints: tuple[Point, ...]

    def position(self, time) -> Point:
        k = int(time)
        if k >= len(self.waypoints) - 1:
            return self.waypoints[-1]
        lam = mpq(time) - k
        if lam == 0:
            return self.waypoints[k]
        return lerp(self.waypoints[k], self.waypoints[k + 1], lam)


def _hits(path: Sequence[Point], sweep: Segment, start: int):
    """(entry, exit) of the path on the sweep as ((seg, t), point) pairs, scanning from ``start``."""
    if len(path) == 1:
        p = path[0]
        if (sweep.degenerate and p == sweep.a) or (not sweep.degenerate and point_on_segment(p, sweep)):
            return ((0, mpq(0)), p), ((0, mpq(0)), p)
        raise NoIntersection(f"path {p} misses sweep {sweep}")
    first = last = None
    for j in range(start, len(path) - 1):
        seg = Segment(path[j], path[j + 1])
        if sweep.degenerate:
            found = [sweep.a] if point_on_segment(sweep.a, seg) else []
        else:
            hit = segment_intersection(seg, sweep)
            if isinstance(hit, Empty):
                found = []
            elif isinstance(hit, At):
                found = [hit.point]
            else:
                found = [hit.segment.a, hit.segment.b]
        if not found:
            if first is not None:
                break
            continue
        keyed = [((j, param_on(seg, p)), p) for p in found]
        if first is None:
            first = min(keyed)
        last = max(keyed)
    if first is None:
        raise NoIntersection(f"path misses sweep {sweep}")
    return first, last


def waypoint(path: GeodesicPath, sweep: Segment) -> Point:
    """Intersection of the path with the sweep, furthest along the path."""
    return _hits(path.waypoints, sweep, 0)[1][1]


def _case(prev: Segment, nxt: Segment) -> str:
    if prev.degenerate:
        return CASE_A if nxt.degenerate else CASE_B
    return CASE_C if nxt.degenerate else CASE_D


def schedule_from_corridor(corridor: Corridor) -> tuple[Schedule, list[Trajectory]]:
    paths = [p.waypoints for p in corridor.paths]
    n = len(paths)
    pointer = [0] * n
    last_key = [(0, mpq(0))] * n
    rows: list[list[Point]] = []
    sweeps: list[Segment] = []
    tags: list[str] = []
    regions: list[tuple[Point, Point, Point]] = []
    for k, sweep in enumerate(corridor.sweeps):
        entry, exit_ = [], []
        for i, path in enumerate(paths):
            (ek, ep), (xk, xp) = _hits(path, sweep, pointer[i])
            if ek < last_key[i]:
                raise GeometryError(f"robot {i} would move backwards at sweep {k}")
            entry.append(ep)
            exit_.append(xp)
            pointer[i] = xk[0]
            last_key[i] = xk
        if k == 0:
            rows.append(entry)
            sweeps.append(sweep)
        else:
            prev = corridor.sweeps[k - 1]
            tags.append(INIT if not tags or all(t == SLIDE for t in tags) else _case(prev, sweep))
            regions.append(corridor.triangles[k - 1])
            rows.append(entry)
            sweeps.append(sweep)
        if exit_ != entry:
            tags.append(SLIDE)
            regions.append((sweep.a, sweep.b, sweep.b))
            rows.append(exit_)
            sweeps.append(sweep)
    trajectories = [Trajectory(i, tuple(row[i] for row in rows)) for i in range(n)]
    return Schedule(tuple(sweeps), tuple(tags), tuple(regions)), trajectories


def solve(inst: Instance) -> tuple[Schedule, list[Trajectory]]:
    _, schedule, trajectories = solve_with_corridor(inst)
    return schedule, trajectories


def solve_with_corridor(inst: Instance):
    """Like :func:`solve` but also returns the corridor used."""
    kind = classify_instance(inst)
    if isinstance(kind, Crossing):
        raise CrossingInstance(f"S and T cross at {kind.q}; use crossing analysis instead")
    tri = triangulate(inst.polygon)
    paths = [shortest_path_funnel(inst.polygon, tri, s, t) for s, t in inst.robots]
    corridor = build_corridor(inst, tri, paths)
    schedule, trajs = schedule_from_corridor(corridor)
    return corridor, schedule, trajs


def positions_at(trajectories: Sequence[Trajectory], time) -> list[Point]:
    if not trajectories:
        return []
    K = len(trajectories[0].waypoints) - 1
    if time < 0 or time > K:
        raise TimeOutOfRange(f"time {time} outside [0, {K}]")
    return [tr.position(time) for tr in trajectories]
