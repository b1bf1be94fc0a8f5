"""JSON file formats with exact rational coordinates.

Coordinates are written as integers when whole and as "p/q" strings otherwise,
so reading a written file gives back exactly the same numbers.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from gmpy2 import mpq

from .corridor import Instance
from .geometry import Point, Segment, format_rational
from .polygon import validate_simple
from .scheduler import Schedule, Trajectory

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class ParseError(ValueError):
    pass


def parse_rational(value: Any):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"expected an integer or a 'p/q' string, got {value!r}")
    if isinstance(value, str):
        if not _RATIONAL.match(value.strip()):
            raise ParseError(f"malformed rational {value!r}")
        try:
            return mpq(value.strip())
        except ZeroDivisionError:
            raise ParseError(f"zero denominator in {value!r}") from None
    return mpq(value)


def parse_point(value: Any) -> Point:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"expected [x, y], got {value!r}")
    return Point(parse_rational(value[0]), parse_rational(value[1]))


def parse_segment(value: Any) -> Segment:
    if not isinstance(value, dict) or set(value) != {"a", "b"}:
        raise ParseError(f"expected {{'a': [x, y], 'b': [x, y]}}, got {value!r}")
    return Segment(parse_point(value["a"]), parse_point(value["b"]))


def dump_point(p: Point) -> list:
    return [format_rational(p.x), format_rational(p.y)]


def dump_segment(s: Segment) -> dict:
    return {"a": dump_point(s.a), "b": dump_point(s.b)}


def _field(obj: dict, key: str, kind: type):
    if key not in obj:
        raise ParseError(f"missing field {key!r}")
    if not isinstance(obj[key], kind):
        raise ParseError(f"field {key!r} has the wrong type")
    return obj[key]


def _load_json(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    return obj


_SCALAR_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def to_json(obj: dict) -> str:
    """Indented JSON with lists of scalars (points, tags) kept on one line."""
    text = json.dumps(obj, indent=2)
    return _SCALAR_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]",
                            text) + "\n"


# -- instances ------------------------------------------------------------

def parse_instance_data(obj: dict) -> Instance:
    """Build an instance; polygon and placement errors propagate as they are.

    Robots are reordered along S from its first endpoint, stably.
    """
    vertices = [parse_point(v) for v in _field(obj, "polygon", list)]
    S = parse_segment(_field(obj, "S", dict))
    T = parse_segment(_field(obj, "T", dict))
    robots = []
    for r in _field(obj, "robots", list):
        if not isinstance(r, dict):
            raise ParseError("each robot must be an object")
        robots.append((parse_point(_field(r, "start", list)), parse_point(_field(r, "target", list))))
    return Instance.from_robots(validate_simple(vertices), S, T, robots)


def instance_to_data(inst: Instance) -> dict:
    return {
        "polygon": [dump_point(v) for v in inst.polygon.vertices],
        "S": dump_segment(inst.S),
        "T": dump_segment(inst.T),
        "robots": [{"start": dump_point(s), "target": dump_point(t)} for s, t in inst.robots],
    }


def read_instance(path) -> Instance:
    return parse_instance_data(_load_json(Path(path).read_text()))


def write_instance(inst: Instance, path) -> None:
    Path(path).write_text(to_json(instance_to_data(inst)))


# -- solutions ------------------------------------------------------------

@dataclass(frozen=True)
class Solution:
    sweeps: tuple[Segment, ...]
    case_tags: tuple[str, ...]
    trajectories: tuple[tuple[Point, ...], ...]
    m: int

    @property
    def steps(self) -> int:
        return len(self.case_tags)

    @property
    def n(self) -> int:
        return len(self.trajectories)

    @classmethod
    def from_schedule(cls, schedule: Schedule, trajectories: Sequence[Trajectory], m: int) -> "Solution":
        return cls(tuple(schedule.sweeps), tuple(schedule.case_tags),
                   tuple(tuple(t.waypoints) for t in trajectories), m)


def solution_to_data(sol: Solution) -> dict:
    return {
        "sweeps": [dump_segment(s) for s in sol.sweeps],
        "case_tags": list(sol.case_tags),
        "trajectories": [[dump_point(p) for p in line] for line in sol.trajectories],
        "meta": {"steps": sol.steps, "n": sol.n, "m": sol.m},
    }


def parse_solution_data(obj: dict) -> Solution:
    sweeps = tuple(parse_segment(s) for s in _field(obj, "sweeps", list))
    tags = _field(obj, "case_tags", list)
    if not all(isinstance(t, str) for t in tags):
        raise ParseError("case_tags must be strings")
    lines = []
    for line in _field(obj, "trajectories", list):
        if not isinstance(line, list) or not line:
            raise ParseError("each trajectory must be a non-empty list of points")
        lines.append(tuple(parse_point(p) for p in line))
    meta = _field(obj, "meta", dict)
    m = meta.get("m")
    if not isinstance(m, int) or isinstance(m, bool):
        raise ParseError("meta.m must be an integer")
    sol = Solution(sweeps, tuple(tags), tuple(lines), m)
    if meta.get("steps") != sol.steps or meta.get("n") != sol.n:
        raise ParseError("meta does not match the solution body")
    return sol


def read_solution(path) -> Solution:
    return parse_solution_data(_load_json(Path(path).read_text()))


def write_solution(sol: Solution, path) -> None:
    Path(path).write_text(to_json(solution_to_data(sol)))


def read_json(path) -> dict:
    return _load_json(Path(path).read_text())
