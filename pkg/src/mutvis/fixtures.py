"""Small hand-built instances used by tests, the CLI and the shipped JSON files."""
from __future__ import annotations

from .corridor import Instance
from .crossing import hexagon_vertices
from .geometry import Point, Segment, to_rational
from .polygon import validate_simple


def _pt(x, y) -> Point:
    return Point(x, y)


SQUARE = [(0, 0), (10, 0), (10, 10), (0, 10)]
L_SHAPE = [(0, 0), (10, 0), (10, 10), (6, 10), (6, 4), (0, 4)]


def square_instance() -> Instance:
    """Two robots crossing a square left to right along horizontal lines."""
    P = validate_simple(SQUARE)
    S = Segment(_pt(0, 8), _pt(0, 2))
    T = Segment(_pt(10, 8), _pt(10, 2))
    return Instance(P, S, T, (_pt(0, 8), _pt(0, 2)), (_pt(10, 8), _pt(10, 2)))


def pinched_instance() -> Instance:
    """L-shaped room: every geodesic from the lower arm to the upper arm bends at (6, 4)."""
    P = validate_simple(L_SHAPE)
    S = Segment(_pt(1, 3), _pt(1, 1))
    T = Segment(_pt(9, 9), _pt(7, 9))
    return Instance(P, S, T, (_pt(1, 3), _pt(1, 1)), (_pt(9, 9), _pt(7, 9)))


def hexagon_instance(eps="1/10") -> Instance:
    """Crossing instance with a waist of half-height eps at the crossing point.

    Two robots travel along the left end and two along the right end.
    """
    eps = to_rational(eps)
    P = validate_simple(hexagon_vertices(eps))
    S = Segment(_pt(-10, 1), _pt(10, -1))
    T = Segment(_pt(10, 1), _pt(-10, -1))
    starts = (_pt(-9, "9/10"), _pt(-8, "8/10"), _pt(8, "-8/10"), _pt(9, "-9/10"))
    targets = (_pt(-9, "-9/10"), _pt(-8, "-8/10"), _pt(8, "8/10"), _pt(9, "9/10"))
    return Instance(P, S, T, starts, targets)


def convex_crossing_instance() -> Instance:
    """Square with S and T on the diagonals and one robot per quadrant."""
    P = validate_simple([(-10, -10), (10, -10), (10, 10), (-10, 10)])
    S = Segment(_pt(-5, 5), _pt(5, -5))
    T = Segment(_pt(5, 5), _pt(-5, -5))
    starts = (_pt(-4, 4), _pt(-2, 2), _pt(2, -2), _pt(4, -4))
    targets = (_pt(-4, -4), _pt(2, 2), _pt(4, 4), _pt(-2, -2))
    return Instance(P, S, T, starts, targets)


# Mirror-symmetric across the line y = -x, which carries S; T runs along y = x.
STUCK_RING = [(-100, 100), (-39, 9), (-64, -39), (-100, -100), (-1, -12),
              (100, -100), (12, 1), (100, 100), (39, 64), (-9, 39)]


def stuck_instance() -> Instance:
    """Four robots, one per region, where a line pivoting about q deadlocks.

    a = (-100, 100), b = (100, -100) end S; c = (100, 100), d = (-100, -100) end T.
    Chains: a-u-v-d with u = (-39, 9), v = (-64, -39); b-w-c with w = (12, 1);
    their mirror images a-v'-u'-c and b-w'-d.
    """
    P = validate_simple(STUCK_RING)
    a, b, c, d = _pt(-100, 100), _pt(100, -100), _pt(100, 100), _pt(-100, -100)
    return Instance(P, Segment(a, b), Segment(c, d), (a, a, b, b), (d, c, c, d))


FIXTURES = {
    "square": square_instance,
    "pinched": pinched_instance,
    "hexagon": hexagon_instance,
    "convex_crossing": convex_crossing_instance,
    "stuck": stuck_instance,
}
