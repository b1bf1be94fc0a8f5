"""Deterministic random non-crossing instances."""
from __future__ import annotations

import math
import random

from .corridor import Instance, SpansNotFacing, build_corridor
from .geodesic import InstanceRejected, shortest_path_vgraph
from .geometry import Point, Segment, orient
from .polygon import PolygonError, triangulate, validate_simple

COORD_MAX = 10**6


class GenerationFailed(RuntimeError):
    pass


def _cross_int(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _has_collinear_triple(pts) -> bool:
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                if _cross_int(pts[i], pts[j], pts[k]) == 0:
                    return True
    return False


def _edges_cross(a, b, c, d) -> bool:
    d1, d2 = _cross_int(a, b, c), _cross_int(a, b, d)
    d3, d4 = _cross_int(c, d, a), _cross_int(c, d, b)
    return d1 * d2 < 0 and d3 * d4 < 0


def random_polygon(rng: random.Random, m: int, coord_max: int = COORD_MAX) -> list[tuple[int, int]]:
    """Random points untangled by 2-opt moves into a simple polygon."""
    pts = set()
    while len(pts) < m:
        pts.add((rng.randint(0, coord_max), rng.randint(0, coord_max)))
    tour = sorted(pts)
    rng.shuffle(tour)
    if _has_collinear_triple(tour):
        raise GenerationFailed("collinear triple")
    changed = True
    while changed:
        changed = False
        for i in range(m - 2):
            for j in range(i + 2, m if i > 0 else m - 1):
                a, b = tour[i], tour[i + 1]
                c, d = tour[j], tour[(j + 1) % m]
                if _edges_cross(a, b, c, d):
                    tour[i + 1:j + 1] = reversed(tour[i + 1:j + 1])
                    changed = True
    return tour


def _lattice_segment(rng, tri, steps):
    """Integer segment inside a triangle with ``steps`` equal lattice steps."""
    A, B, C = [p.to_float() for p in tri]
    corners = [A, B, C]
    rng.shuffle(corners)
    g = ((A[0] + B[0] + C[0]) / 3, (A[1] + B[1] + C[1]) / 3)
    shrink = rng.uniform(0.55, 0.9)
    p = [g[i] + shrink * (corners[0][i] - g[i]) for i in range(2)]
    q = [g[i] + shrink * (corners[1][i] - g[i]) for i in range(2)]
    start = (round(p[0]), round(p[1]))
    step = (round((q[0] - start[0]) / steps), round((q[1] - start[1]) / steps))
    if step == (0, 0):
        return None
    end = (start[0] + steps * step[0], start[1] + steps * step[1])
    a, b = Point(*start), Point(*end)
    ta, tb, tc = tri
    for x in (a, b):
        if not (orient(ta, tb, x) > 0 and orient(tb, tc, x) > 0 and orient(tc, ta, x) > 0):
            return None
    return a, step


def generate_instance(m: int, n: int, seed: int, *, reject_ties: bool = True,
                      max_attempts: int = 200) -> Instance:
    if m < 4 or n < 1:
        raise ValueError("need m >= 4 and n >= 1")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        try:
            ring = random_polygon(rng, m)
            P = validate_simple(ring)
        except (GenerationFailed, PolygonError):
            continue
        tri = triangulate(P)
        if len(tri) < 2:
            continue
        t1, t2 = rng.sample(range(len(tri)), 2)
        steps_s = n - 1 + rng.randint(1, n + 1)
        steps_t = n - 1 + rng.randint(1, n + 1)
        got_s = _lattice_segment(rng, tri.points(t1), steps_s)
        got_t = _lattice_segment(rng, tri.points(t2), steps_t)
        if got_s is None or got_t is None:
            continue
        (sa, ds), (ta, dt) = got_s, got_t
        S = Segment(sa, Point(sa.x + steps_s * ds[0], sa.y + steps_s * ds[1]))
        T = Segment(ta, Point(ta.x + steps_t * dt[0], ta.y + steps_t * dt[1]))
        if orient(S.a, S.b, T.a) == 0 and orient(S.a, S.b, T.b) == 0:
            continue
        ks = sorted(rng.sample(range(steps_s + 1), n))
        kt = rng.sample(range(steps_t + 1), n)
        starts = [Point(sa.x + k * ds[0], sa.y + k * ds[1]) for k in ks]
        targets = [Point(ta.x + k * dt[0], ta.y + k * dt[1]) for k in kt]
        inst = Instance(P, S, T, tuple(starts), tuple(targets))
        try:
            build_corridor(inst, tri)
        except SpansNotFacing:
            continue
        if reject_ties:
            try:
                for s, t in inst.robots:
                    shortest_path_vgraph(P, s, t, strict=True)
            except InstanceRejected:
                continue
        return inst
    raise GenerationFailed(f"no instance after {max_attempts} attempts (m={m}, n={n}, seed={seed})")
