"""Problem instances and the corridor between the start and target spans.

The corridor is the hourglass bounded by the start span (s_1, s_n), the
target span, and two geodesic chains. When the chains share points the
hourglass is pinched into two funnels joined by the shared path.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .geodesic import GeodesicPath, shortest_path_funnel
from .geometry import (
    Empty,
    GeometryError,
    Overlap,
    Point,
    Segment,
    At,
    orient,
    param_on,
    point_on_segment,
    properly_cross,
    segment_intersection,
    signed_area2,
)
from .polygon import SimplePolygon, Triangulation, in_closed_triangle, segment_inside, triangulate


class InvalidInstance(GeometryError):
    pass


class OverlappingSegments(InvalidInstance):
    pass


class CorridorError(GeometryError):
    """The corridor could not be built; indicates a degenerate or unsupported input."""


class SpansNotFacing(CorridorError):
    """Some geodesic leaves the start span, or reaches the target span, from the wrong side."""


@dataclass(frozen=True)
class Instance:
    polygon: SimplePolygon
    S: Segment
    T: Segment
    starts: tuple[Point, ...]
    targets: tuple[Point, ...]

    def __post_init__(self):
        if not self.starts:
            raise InvalidInstance("an instance needs at least one robot")
        if len(self.starts) != len(self.targets):
            raise InvalidInstance("starts and targets differ in length")
        for name, seg in (("S", self.S), ("T", self.T)):
            if seg.degenerate:
                raise InvalidInstance(f"{name} is degenerate")
            if not (self.polygon.contains(seg.a) and self.polygon.contains(seg.b)
                    and segment_inside(self.polygon, seg)):
                raise InvalidInstance(f"{name} is not inside the polygon")
        for i, p in enumerate(self.starts):
            if not point_on_segment(p, self.S):
                raise InvalidInstance(f"start {i} is not on S")
        for i, p in enumerate(self.targets):
            if not point_on_segment(p, self.T):
                raise InvalidInstance(f"target {i} is not on T")
        ts = [param_on(self.S, p) for p in self.starts]
        if any(t0 > t1 for t0, t1 in zip(ts, ts[1:])):
            raise InvalidInstance("starts must be ordered along S from S.a")

    @classmethod
    def from_robots(cls, polygon, S, T, robots: Sequence[tuple[Point, Point]]) -> "Instance":
        """Build an instance, ordering robots along S from its first endpoint."""
        S, T = Segment(*S), Segment(*T)
        order = sorted(robots, key=lambda r: param_on(S, r[0]) if not S.degenerate else 0)
        return cls(polygon, S, T, tuple(r[0] for r in order), tuple(r[1] for r in order))

    @property
    def n(self) -> int:
        return len(self.starts)

    @property
    def m(self) -> int:
        return len(self.polygon)

    @property
    def robots(self) -> list[tuple[Point, Point]]:
        return list(zip(self.starts, self.targets))


class NonCrossing(NamedTuple):
    pass


class Crossing(NamedTuple):
    q: Point


def classify_instance(inst: Instance):
    hit = segment_intersection(inst.S, inst.T)
    if isinstance(hit, Empty):
        return NonCrossing()
    if isinstance(hit, Overlap):
        raise OverlappingSegments("S and T overlap along a segment")
    return Crossing(hit.point)


@dataclass(frozen=True)
class Corridor:
    upper: tuple[Point, ...]
    lower: tuple[Point, ...]
    shared: tuple[Point, ...]
    pinch: Point | None
    sweeps: tuple[Segment, ...]
    triangles: tuple[tuple[Point, Point, Point], ...]
    paths: tuple[GeodesicPath, ...]
    orientation: int

    @property
    def kind(self) -> str:
        return "pinched" if self.shared else "two_chains"

    @property
    def start_span(self) -> Segment:
        return self.sweeps[0]

    @property
    def target_span(self) -> Segment:
        return self.sweeps[-1]


def span(seg: Segment, points: Sequence[Point]) -> tuple[Point, Point]:
    """Extreme points of ``points`` along ``seg``, nearest to seg.a first."""
    keyed = sorted(points, key=lambda p: param_on(seg, p))
    return keyed[0], keyed[-1]


def _chains_cross(U: Sequence[Point], V: Sequence[Point]) -> bool:
    for i in range(len(U) - 1):
        for j in range(len(V) - 1):
            if properly_cross(U[i], U[i + 1], V[j], V[j + 1]):
                return True
    return False


def _insert_points(chain: list[Point], extra: Sequence[Point]) -> list[Point]:
    """Split chain edges at any of ``extra`` lying in their relative interiors."""
    present = set(chain)
    pending: dict[int, set[Point]] = {}
    for p in extra:
        if p in present:
            continue
        for i in range(len(chain) - 1):
            seg = Segment(chain[i], chain[i + 1])
            if point_on_segment(p, seg):
                pending.setdefault(i, set()).add(p)
                break
    if not pending:
        return chain
    out = []
    for i, p in enumerate(chain):
        out.append(p)
        if i in pending:
            seg = Segment(chain[i], chain[i + 1])
            out.extend(sorted(pending[i], key=lambda x: param_on(seg, x)))
    return out


def _shared_run(U: Sequence[Point], V: Sequence[Point]) -> tuple[list[int], list[int]]:
    common = set(U) & set(V)
    iu = [i for i, p in enumerate(U) if p in common]
    iv = [j for j, p in enumerate(V) if p in common]
    if not iu:
        return [], []
    if (iu != list(range(iu[0], iu[-1] + 1)) or iv != list(range(iv[0], iv[-1] + 1))
            or [U[i] for i in iu] != [V[j] for j in iv]):
        raise CorridorError("chains share points that do not form one common subpath")
    return iu, iv


def _piece_areas(U, V, iu, iv) -> list:
    """Signed areas of the funnels before and after the shared run."""
    if not iu:
        return [signed_area2([*V, *U[::-1]])]
    before = [*V[: iv[0] + 1], *U[: iu[0]][::-1]]
    after = [*V[iv[-1]:], *U[iu[-1] + 1:][::-1]]
    return [signed_area2(before) if len(before) >= 3 else 0,
            signed_area2(after) if len(after) >= 3 else 0]


def _next_shared(chain: Sequence[Point], i: int, shared: set) -> int:
    for j in range(i, len(chain)):
        if chain[j] in shared:
            return j
    return len(chain) - 1


def _merge(U: Sequence[Point], V: Sequence[Point], shared: set, sign: int):
    """Walk both chains from the start span to the target span, one triangle at a time.

    Each step clips an ear of the remaining funnel at the current sweep; the
    ear must be oriented with the corridor and hold no other funnel vertex.
    """
    a = b = 0
    k, l = len(U), len(V)
    sweeps = [Segment(U[0], V[0])]
    triangles = []
    while a < k - 1 or b < l - 1:
        ua, vb = U[a], V[b]
        can_u, can_v = a + 1 < k, b + 1 < l
        if can_u and can_v and (ua == vb or U[a + 1] == V[b + 1]):
            a, b = a + 1, b + 1
            triangles.append((ua, vb, U[a]) if ua != vb else (ua, U[a], V[b]))
            sweeps.append(Segment(U[a], V[b]))
            continue
        su = _next_shared(U, a + 1, shared) if can_u else a
        sv = _next_shared(V, b + 1, shared) if can_v else b
        options = []
        for which, apex, others in (
            ("u", U[a + 1] if can_u else None, [*U[a + 2:su + 1], *V[b + 1:sv + 1]]),
            ("v", V[b + 1] if can_v else None, [*U[a + 1:su + 1], *V[b + 2:sv + 1]]),
        ):
            if apex is None:
                continue
            if which == "u" and apex in shared and can_v and V[b + 1] != apex:
                continue
            if which == "v" and apex in shared and can_u and U[a + 1] != apex:
                continue
            turn = orient(ua, vb, apex) * sign
            if turn < 0:
                continue
            tri = (ua, vb, apex) if sign > 0 else (ua, apex, vb)
            if turn > 0 and any(p not in tri and in_closed_triangle(p, *tri) for p in others):
                continue
            options.append((turn == 0, 0 if which == "u" else 1, which, apex))
        if not options:
            raise CorridorError(f"no valid corridor triangle on sweep {ua}-{vb}")
        options.sort(key=lambda t: t[:2])
        if options[0][2] == "u":
            a += 1
        else:
            b += 1
        triangles.append((ua, vb, options[0][3]))
        sweeps.append(Segment(U[a], V[b]))
    return sweeps, triangles


def _check_facing(paths: Sequence[Sequence[Point]], s_span: tuple[Point, Point],
                  t_span: tuple[Point, Point]) -> None:
    """Every path must leave the start span and enter the target span from one fixed side."""
    for (a, b), pick, name in ((s_span, 1, "start"), (t_span, -2, "target")):
        if a == b:
            continue
        sides = set()
        for path in paths:
            sides.add(orient(a, b, path[pick]) if len(path) > 1 else 0)
        if 0 in sides or len(sides) > 1:
            raise SpansNotFacing(f"geodesics meet the {name} span from both sides or along it")


def build_corridor(inst: Instance, triangulation: Triangulation | None = None,
                   paths: Sequence[GeodesicPath] | None = None) -> Corridor:
    P = inst.polygon
    tri = triangulation if triangulation is not None else triangulate(P)
    if paths is None:
        paths = [shortest_path_funnel(P, tri, s, t) for s, t in inst.robots]
    s1, sn = inst.starts[0], inst.starts[-1]
    t_lo, t_hi = span(inst.T, inst.targets)
    _check_facing([p.waypoints for p in paths], (s1, sn), (t_lo, t_hi))

    chosen = None
    for e_u, e_v in ((t_lo, t_hi), (t_hi, t_lo)):
        U = list(shortest_path_funnel(P, tri, s1, e_u).waypoints)
        V = list(shortest_path_funnel(P, tri, sn, e_v).waypoints)
        if _chains_cross(U, V):
            continue
        U, V = _insert_points(U, V), _insert_points(V, U)
        try:
            iu, iv = _shared_run(U, V)
        except CorridorError:
            continue
        areas = [x for x in _piece_areas(U, V, iu, iv) if x != 0]
        if any((x > 0) != (areas[0] > 0) for x in areas):
            continue
        chosen = (U, V, areas)
        break
    if chosen is None:
        raise CorridorError("neither chain pairing yields a non-crossing corridor")
    U, V, areas = chosen
    _check_facing([U, V], (s1, sn), (t_lo, t_hi))
    sign = 1 if not areas or areas[0] > 0 else -1

    bends = [w for path in paths for w in path.waypoints[1:-1]]
    U = _insert_points(U, bends)
    V = _insert_points(V, bends)
    on_chain = set(U) | set(V)
    for w in bends:
        if w not in on_chain:
            raise CorridorError(f"geodesic bends at {w}, which is not on the corridor boundary")
    iu, _ = _shared_run(U, V)
    shared = [U[i] for i in iu]
    sweeps, triangles = _merge(U, V, set(shared), sign)
    return Corridor(
        upper=tuple(U),
        lower=tuple(V),
        shared=tuple(shared),
        pinch=shared[0] if shared else None,
        sweeps=tuple(sweeps),
        triangles=tuple(triangles),
        paths=tuple(paths),
        orientation=sign,
    )


def sweep_segments(c: Corridor) -> list[Segment]:
    return list(c.sweeps)
