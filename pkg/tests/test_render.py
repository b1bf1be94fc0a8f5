import xml.etree.ElementTree as ET

from mutvis.fixtures import FIXTURES, pinched_instance, square_instance
from mutvis.geometry import Point
from mutvis.render import VIEW, Viewport, render_svg
from mutvis.scheduler import solve

NS = {"svg": "http://www.w3.org/2000/svg"}


def parse(text):
    return ET.fromstring(text.split("\n", 1)[1])


def by_class(root, tag, cls):
    return [e for e in root.iter(f"{{{NS['svg']}}}{tag}") if e.get("class") == cls]


def test_square_with_solution():
    inst = square_instance()
    schedule, trajs = solve(inst)
    root = parse(render_svg(inst, schedule.sweeps, [t.waypoints for t in trajs]))
    assert root.get("viewBox") == f"0 0 {VIEW} {VIEW}"
    assert len(list(root.iter(f"{{{NS['svg']}}}polygon"))) == 1
    assert len(by_class(root, "polyline", "trajectory")) == 2
    assert len(by_class(root, "line", "sweep")) == 3
    assert all(e.get("stroke-dasharray") for e in by_class(root, "line", "sweep"))
    colors = {e.get("stroke") for e in by_class(root, "polyline", "trajectory")}
    assert len(colors) == 2


def test_instance_only():
    root = parse(render_svg(square_instance()))
    assert len(by_class(root, "polygon", "boundary")) == 1
    assert len(by_class(root, "line", "start-segment")) == 1
    assert len(by_class(root, "line", "target-segment")) == 1
    assert len(by_class(root, "circle", "start")) == 2
    assert len(by_class(root, "circle", "target")) == 2
    assert not by_class(root, "polyline", "trajectory")


def test_pinched_trajectories_pass_through_pinch():
    inst = pinched_instance()
    schedule, trajs = solve(inst)
    root = parse(render_svg(inst, schedule.sweeps, [t.waypoints for t in trajs]))
    pinch = Viewport.fit(inst.polygon.vertices).coords(Point(6, 4))
    lines = by_class(root, "polyline", "trajectory")
    assert len(lines) == 2
    assert all(pinch in e.get("points").split() for e in lines)


def test_aspect_ratio_preserved():
    view = Viewport.fit([Point(0, 0), Point(10, 0), Point(10, 4), Point(0, 4)])
    (x0, y0), (x1, y1) = view.map(Point(0, 0)), view.map(Point(10, 4))
    assert abs((x1 - x0) / (y0 - y1) - 10 / 4) < 1e-9
    assert 0 <= x0 and x1 <= VIEW and 0 <= y1 and y0 <= VIEW


def test_every_fixture_renders_well_formed():
    for make in FIXTURES.values():
        parse(render_svg(make()))
