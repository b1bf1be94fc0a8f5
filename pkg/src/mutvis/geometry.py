"""Exact planar primitives over rationals.

All coordinates are ``gmpy2.mpq`` values, so every predicate here is exact.
"""
from __future__ import annotations

from collections import namedtuple
from numbers import Rational as _RationalABC
from typing import NamedTuple, Union

from gmpy2 import mpq

Rational = type(mpq(0))

CCW = 1
CW = -1
COLLINEAR = 0


class GeometryError(ValueError):
    pass


class NoIntersection(GeometryError):
    pass


class DegenerateInput(GeometryError):
    pass


def to_rational(value) -> Rational:
    """Coerce ints, Fractions, mpq, decimal strings or ``"p/q"`` strings."""
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a coordinate")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, _RationalABC):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational string")
        return mpq(text)
    if isinstance(value, float):
        # floats are exact binary rationals
        return mpq(value)
    raise TypeError(f"cannot convert {value!r} to a rational")


def format_rational(value: Rational) -> str | int:
    """Integers stay integers; everything else becomes ``"p/q"``."""
    if value.denominator == 1:
        return int(value.numerator)
    return f"{int(value.numerator)}/{int(value.denominator)}"


class Point(namedtuple("Point", ["x", "y"])):
    __slots__ = ()

    def __new__(cls, x, y):
        return super().__new__(cls, to_rational(x), to_rational(y))

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, k):
        return Point(self.x * k, self.y * k)

    __rmul__ = __mul__

    def __repr__(self):
        return f"Point({format_rational(self.x)!r}, {format_rational(self.y)!r})"

    def to_float(self) -> tuple[float, float]:
        return float(self.x), float(self.y)


class Segment(NamedTuple):
    a: Point
    b: Point

    @property
    def degenerate(self) -> bool:
        return self.a == self.b

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)


def cross(o: Point, p: Point, q: Point):
    """(p - o) x (q - o), exact."""
    return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x)


def dot(o: Point, p: Point, q: Point):
    """(p - o) . (q - o), exact."""
    return (p.x - o.x) * (q.x - o.x) + (p.y - o.y) * (q.y - o.y)


def orient(p: Point, q: Point, r: Point) -> int:
    c = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x)
    return (c > 0) - (c < 0)


def dist2(p: Point, q: Point):
    dx = p.x - q.x
    dy = p.y - q.y
    return dx * dx + dy * dy


def lerp(p: Point, q: Point, t) -> Point:
    return Point(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t)


def midpoint(p: Point, q: Point) -> Point:
    half = mpq(1, 2)
    return Point((p.x + q.x) * half, (p.y + q.y) * half)


def point_on_segment(p: Point, s: Segment) -> bool:
    a, b = s
    if orient(a, b, p) != 0:
        return False
    return (min(a.x, b.x) <= p.x <= max(a.x, b.x)
            and min(a.y, b.y) <= p.y <= max(a.y, b.y))


def param_on(s: Segment, p: Point):
    """Parameter t with p = a + t (b - a), for p known to lie on the line of s."""
    a, b = s
    dx = b.x - a.x
    if dx != 0:
        return (p.x - a.x) / dx
    return (p.y - a.y) / (b.y - a.y)


class Empty(NamedTuple):
    pass


class At(NamedTuple):
    point: Point


class Overlap(NamedTuple):
    segment: Segment


Intersection = Union[Empty, At, Overlap]


def segment_intersection(s1: Segment, s2: Segment) -> Intersection:
    """Exact intersection of two closed, non-degenerate segments.

    ``Overlap`` segments are oriented along ``s1``.
    """
    if s1.degenerate or s2.degenerate:
        raise DegenerateInput("segment endpoints coincide")
    a, b = s1
    c, d = s2
    d1 = orient(a, b, c)
    d2 = orient(a, b, d)
    if d1 == 0 and d2 == 0:
        # collinear: clip s2 onto s1's parameter range
        t0 = param_on(s1, c)
        t1 = param_on(s1, d)
        lo, hi = max(min(t0, t1), 0), min(max(t0, t1), 1)
        if lo > hi:
            return Empty()
        p = lerp(a, b, lo) if lo not in (0, 1) else (a if lo == 0 else b)
        if lo == hi:
            return At(p)
        q = lerp(a, b, hi) if hi not in (0, 1) else (a if hi == 0 else b)
        return Overlap(Segment(p, q))
    if d1 == d2:
        return Empty()
    d3 = orient(c, d, a)
    d4 = orient(c, d, b)
    if d3 == d4:
        return Empty()
    # exact endpoint hits avoid needless division
    if d1 == 0:
        return At(c)
    if d2 == 0:
        return At(d)
    if d3 == 0:
        return At(a)
    if d4 == 0:
        return At(b)
    return At(line_intersection(a, b, c, d))


def line_intersection(p1: Point, p2: Point, p3: Point, p4: Point) -> Point | None:
    """Intersection of the infinite lines p1p2 and p3p4, or None if parallel."""
    den = (p2.x - p1.x) * (p4.y - p3.y) - (p2.y - p1.y) * (p4.x - p3.x)
    if den == 0:
        return None
    t = ((p3.x - p1.x) * (p4.y - p3.y) - (p3.y - p1.y) * (p4.x - p3.x)) / den
    return lerp(p1, p2, t)


def properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Segments ab and cd cross at a single point interior to both."""
    d1 = orient(a, b, c)
    d2 = orient(a, b, d)
    if d1 == 0 or d2 == 0 or d1 == d2:
        return False
    d3 = orient(c, d, a)
    d4 = orient(c, d, b)
    return d3 != 0 and d4 != 0 and d3 != d4


def signed_area2(vertices) -> Rational:
    """Twice the signed area (positive for counterclockwise)."""
    total = mpq(0)
    n = len(vertices)
    for i in range(n):
        p = vertices[i]
        q = vertices[(i + 1) % n]
        total += p.x * q.y - q.x * p.y
    return total
