import json

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from mutvis.fixtures import FIXTURES, square_instance
from mutvis.formats import (
    ParseError, Solution, instance_to_data, parse_instance_data, parse_rational, parse_solution_data,
    read_instance, solution_to_data, to_json, write_instance, write_solution, read_solution,
)
from mutvis.geometry import format_rational
from mutvis.polygon import NotSimple
from mutvis.scheduler import solve


@given(st.fractions())
def test_rational_text_round_trip(value):
    r = mpq(value.numerator, value.denominator)
    assert parse_rational(format_rational(r)) == r


@pytest.mark.parametrize("bad", [1.5, True, None, "1.5", "1/0", "a/b", "", [1]])
def test_bad_rationals(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_fixture_instances_round_trip(name, tmp_path):
    inst = FIXTURES[name]()
    path = tmp_path / f"{name}.json"
    write_instance(inst, path)
    assert read_instance(path) == inst
    assert to_json(instance_to_data(read_instance(path))) == path.read_text()


def test_solution_round_trip(tmp_path, small_corpus):
    for seed, inst, corridor, schedule, trajs in small_corpus[:5]:
        sol = Solution.from_schedule(schedule, trajs, inst.m)
        path = tmp_path / f"{seed}.json"
        write_solution(sol, path)
        assert read_solution(path) == sol


def test_solution_meta():
    inst = square_instance()
    schedule, trajs = solve(inst)
    data = solution_to_data(Solution.from_schedule(schedule, trajs, inst.m))
    assert data["meta"] == {"steps": 2, "n": 2, "m": 4}
    assert data["trajectories"][0] == [[0, 8], [10, 8], [10, 8]]
    data["meta"]["steps"] = 3
    with pytest.raises(ParseError):
        parse_solution_data(data)


def test_instance_schema_errors():
    good = instance_to_data(square_instance())
    for key in ("polygon", "S", "T", "robots"):
        broken = dict(good)
        del broken[key]
        with pytest.raises(ParseError):
            parse_instance_data(broken)
    broken = json.loads(json.dumps(good))
    broken["S"] = {"a": [0, 8]}
    with pytest.raises(ParseError):
        parse_instance_data(broken)
    broken = json.loads(json.dumps(good))
    broken["polygon"] = [[0, 0], [2, 2], [2, 0], [0, 2]]
    with pytest.raises(NotSimple):
        parse_instance_data(broken)


def test_fractional_coordinates_written_as_strings():
    data = instance_to_data(FIXTURES["hexagon"]())
    assert [0, "-1/10"] in data["polygon"]
    assert data["robots"][1]["start"] == [-8, "4/5"]


def test_robots_sorted_along_start_segment():
    data = instance_to_data(square_instance())
    data["robots"].reverse()
    inst = parse_instance_data(data)
    assert inst.starts == square_instance().starts
