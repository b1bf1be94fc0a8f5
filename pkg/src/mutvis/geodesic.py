"""Shortest paths inside a simple polygon.

Two independent routes: the funnel (string pulling) over the triangulation
sleeve, and Dijkstra over the visibility graph of reflex vertices. The
geodesic in a simple polygon is unique, so both must agree waypoint for
waypoint once put in canonical form.
"""
from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .geometry import GeometryError, Point, Segment, dot, orient
from .polygon import (
    EXTERIOR,
    SimplePolygon,
    Triangulation,
    in_closed_triangle,
    locate,
    segment_inside,
    segment_inside_unchecked,
)

TIE_TOLERANCE = 1e-9


class PointOutside(GeometryError):
    pass


class InstanceRejected(GeometryError):
    """Dijkstra saw a near-tie between distinct canonical paths."""


@dataclass(frozen=True)
class GeodesicPath:
    waypoints: tuple[Point, ...]

    def __len__(self):
        return len(self.waypoints)

    def __iter__(self):
        return iter(self.waypoints)

    def __getitem__(self, i):
        return self.waypoints[i]

    @property
    def source(self) -> Point:
        return self.waypoints[0]

    @property
    def target(self) -> Point:
        return self.waypoints[-1]

    def segments(self) -> list[Segment]:
        w = self.waypoints
        return [Segment(w[i], w[i + 1]) for i in range(len(w) - 1)]

    def reversed(self) -> "GeodesicPath":
        return GeodesicPath(self.waypoints[::-1])

    def length(self) -> float:
        return path_length(self)


def canonical(points: Iterable[Point]) -> tuple[Point, ...]:
    """Drop repeated points and straight interior vertices."""
    out: list[Point] = []
    for p in points:
        if out and out[-1] == p:
            continue
        while len(out) >= 2 and orient(out[-2], out[-1], p) == 0 and dot(out[-1], out[-2], p) <= 0:
            out.pop()
        out.append(p)
    return tuple(out)


def path_length(path) -> float:
    w = list(path)
    return math.fsum(math.dist(w[i].to_float(), w[i + 1].to_float()) for i in range(len(w) - 1))


def _check_inside(P: SimplePolygon, *points: Point) -> None:
    for p in points:
        if locate(P.vertices, p) is EXTERIOR:
            raise PointOutside(f"{p} lies outside the polygon")


# -- funnel ---------------------------------------------------------------

def containing_triangles(T: Triangulation, p: Point) -> list[int]:
    return [t for t in range(len(T)) if in_closed_triangle(p, *T.points(t))]


def sleeve(T: Triangulation, sources: Sequence[int], targets: Sequence[int]) -> list[int]:
    """Shortest dual-tree walk from any source triangle to any target triangle."""
    goal = set(targets)
    parent = {t: None for t in sources}
    queue = deque(sources)
    while queue:
        t = queue.popleft()
        if t in goal:
            walk = []
            while t is not None:
                walk.append(t)
                t = parent[t]
            return walk[::-1]
        for u in T.adjacency[t]:
            if u >= 0 and u not in parent:
                parent[u] = t
                queue.append(u)
    raise GeometryError("triangulation dual graph is disconnected")


def portals(T: Triangulation, walk: Sequence[int]) -> list[tuple[Point, Point]]:
    """(left, right) endpoints of each diagonal crossed by the walk."""
    vs = T.polygon.vertices
    out = []
    for t, u in zip(walk, walk[1:]):
        tri = T.triangles[t]
        k = T.adjacency[t].index(u)
        # leaving a CCW triangle across edge p->q: p is on the right
        out.append((vs[tri[(k + 1) % 3]], vs[tri[k]]))
    return out


def _crosses(apex: Point, side: Point, p: Point, sign: int) -> bool:
    """Does p lie beyond the funnel ray apex->side (sign +1: left ray, -1: right ray)?"""
    if side == apex:
        return False
    o = orient(apex, side, p) * sign
    if o > 0:
        return True
    if o < 0:
        return False
    # on the ray's line: only points strictly past ``side`` cross it
    return dot(apex, side, p) > 0 and dot(side, apex, p) < 0


def string_pull(gates: Sequence[tuple[Point, Point]], s: Point, t: Point) -> tuple[Point, ...]:
    gates = [(s, s), *gates, (t, t)]
    path = [s]
    apex = left = right = s
    apex_i = left_i = right_i = 0
    i = 1
    while i < len(gates):
        l, r = gates[i]
        if orient(apex, right, r) >= 0:
            if not _crosses(apex, left, r, +1):
                right, right_i = r, i
            else:
                path.append(left)
                apex, apex_i = left, left_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        if orient(apex, left, l) <= 0:
            if not _crosses(apex, right, l, -1):
                left, left_i = l, i
            else:
                path.append(right)
                apex, apex_i = right, right_i
                left = right = apex
                left_i = right_i = apex_i
                i = apex_i + 1
                continue
        i += 1
    path.append(t)
    return canonical(path)


def shortest_path_funnel(P: SimplePolygon, T: Triangulation, s: Point, t: Point) -> GeodesicPath:
    _check_inside(P, s, t)
    if s == t:
        return GeodesicPath((s,))
    start = containing_triangles(T, s)
    end = containing_triangles(T, t)
    walk = sleeve(T, start, end)
    return GeodesicPath(string_pull(portals(T, walk), s, t))


# -- visibility graph -----------------------------------------------------

def _tangent(P: SimplePolygon, idx: int, p: Point) -> bool:
    """Can a shortest path arriving from p bend at reflex vertex idx?"""
    vs = P.vertices
    r = vs[idx]
    return orient(p, r, vs[idx - 1]) * orient(p, r, vs[(idx + 1) % len(vs)]) >= 0


@lru_cache(maxsize=32)
def _reflex_graph(P: SimplePolygon) -> tuple[list[Point], list[list[tuple[int, float]]]]:
    idx = P.reflex_indices
    nodes = [P.vertices[i] for i in idx]
    fl = [p.to_float() for p in nodes]
    adj: list[list[tuple[int, float]]] = [[] for _ in nodes]
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if not (_tangent(P, idx[i], nodes[j]) and _tangent(P, idx[j], nodes[i])):
                continue
            if segment_inside_unchecked(P, Segment(nodes[i], nodes[j])):
                w = math.dist(fl[i], fl[j])
                adj[i].append((j, w))
                adj[j].append((i, w))
    return nodes, adj


def shortest_path_vgraph(P: SimplePolygon, s: Point, t: Point, strict: bool = False) -> GeodesicPath:
    """Dijkstra over {s, t} and the reflex vertices.

    Edges into a reflex vertex that the path could not wrap around (its two
    polygon neighbours on opposite sides of the edge line) are skipped before
    the visibility test; they never lie on a shortest path.

    With ``strict`` a near-tie (within 1e-9 relative) between paths with
    different canonical forms raises :class:`InstanceRejected`.
    """
    _check_inside(P, s, t)
    if s == t:
        return GeodesicPath((s,))
    if segment_inside(P, Segment(s, t)):
        return GeodesicPath((s, t))
    reflex, radj = _reflex_graph(P)
    k = len(reflex)
    src, dst = k, k + 1
    nodes = reflex + [s, t]
    fl = [p.to_float() for p in nodes]
    extra: dict[int, list[tuple[int, float]]] = {src: [], dst: []}
    for end in (src, dst):
        for j in range(k):
            if nodes[j] == nodes[end] or not _tangent(P, P.reflex_indices[j], nodes[end]):
                continue
            if segment_inside_unchecked(P, Segment(nodes[end], nodes[j])):
                w = math.dist(fl[end], fl[j])
                extra[end].append((j, w))
    to_dst = {j: w for j, w in extra[dst]}

    def neighbours(u):
        if u == src:
            return extra[src]
        out = list(radj[u])
        if u in to_dst:
            out.append((dst, to_dst[u]))
        return out

    dist = {src: 0.0}
    pred: dict[int, int | None] = {src: None}
    alt: dict[int, int] = {}
    done = set()
    heap = [(0.0, src)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == dst:
            break
        for v, w in neighbours(u):
            if v in done:
                continue
            nd = d + w
            old = dist.get(v)
            if old is None or nd < old - TIE_TOLERANCE * max(1.0, nd):
                dist[v] = nd
                pred[v] = u
                alt.pop(v, None)
                heapq.heappush(heap, (nd, v))
            elif abs(nd - old) <= TIE_TOLERANCE * max(1.0, nd):
                if nd < old:
                    alt[v] = pred[v]
                    dist[v] = nd
                    pred[v] = u
                    heapq.heappush(heap, (nd, v))
                elif pred[v] != u:
                    alt[v] = u
    if dst not in pred:
        raise GeometryError("visibility graph is disconnected")

    def chain(v):
        out = []
        while v is not None:
            out.append(v)
            v = pred[v]
        return out[::-1]

    order = chain(dst)
    best = canonical(nodes[v] for v in order)
    if strict:
        for pos, v in enumerate(order):
            if v in alt:
                other = canonical(nodes[u] for u in chain(alt[v]) + order[pos:])
                if other != best:
                    raise InstanceRejected(f"near-tie between {best} and {other}")
    return GeodesicPath(best)
