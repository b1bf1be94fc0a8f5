"""Command-line entry point: ``mutvis solve|verify|gen|render|analyze``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .corridor import Crossing, CorridorError, InvalidInstance, classify_instance
from .crossing import NotCrossing, decompose, deadlock_critical_points, rotating_line_run, Stuck
from .formats import (
    ParseError,
    Solution,
    dump_point,
    read_instance,
    read_solution,
    to_json,
    write_instance,
    write_solution,
)
from .generator import GenerationFailed, generate_instance
from .geometry import GeometryError, format_rational
from .polygon import PolygonError
from .render import render_svg
from .scheduler import solve
from .verifier import CountMismatch, DEFAULT_SAMPLES, verify

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_WRONG_CASE = 2
EXIT_PARSE = 3
EXIT_INVALID = 4
EXIT_GENERATION = 5

SEED_ENV = "MUTVIS_SEED"


class CommandError(Exception):
    def __init__(self, code: int, payload: dict):
        super().__init__(payload.get("message", ""))
        self.code = code
        self.payload = payload


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _load_instance(path):
    try:
        return read_instance(path)
    except (ParseError, OSError) as exc:
        raise CommandError(EXIT_PARSE, {"error": "parse", "message": str(exc)}) from None
    except (PolygonError, InvalidInstance, GeometryError) as exc:
        raise CommandError(EXIT_INVALID, {"error": "invalid_instance",
                                          "kind": type(exc).__name__, "message": str(exc)}) from None


def cmd_solve(args) -> int:
    inst = _load_instance(args.input)
    kind = classify_instance(inst)
    if isinstance(kind, Crossing):
        raise CommandError(EXIT_WRONG_CASE, {
            "error": "crossing_instance", "q": dump_point(kind.q),
            "message": "S and T cross; run `mutvis analyze` on this instance instead"})
    try:
        schedule, trajs = solve(inst)
    except CorridorError as exc:
        raise CommandError(EXIT_INVALID, {"error": "unsupported_instance",
                                          "kind": type(exc).__name__, "message": str(exc)}) from None
    write_solution(Solution.from_schedule(schedule, trajs, inst.m), args.output)
    print(f"solved: n={inst.n} m={inst.m} steps={schedule.steps}")
    return EXIT_OK


def cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    try:
        sol = read_solution(args.solution)
    except (ParseError, OSError) as exc:
        raise CommandError(EXIT_PARSE, {"error": "parse", "message": str(exc)}) from None
    if sol.n != inst.n or sol.m != inst.m:
        raise CommandError(EXIT_INVALID, {
            "error": "mismatch", "message": f"solution has n={sol.n}, m={sol.m}; "
                                            f"instance has n={inst.n}, m={inst.m}"})
    try:
        report = verify(inst, sol.trajectories, args.samples)
    except CountMismatch as exc:
        raise CommandError(EXIT_INVALID, {"error": "mismatch", "message": str(exc)}) from None
    summary = {"paths_ok": report.paths_ok, "visibility_ok": report.visibility_ok,
               "samples_per_step": report.samples_per_step}
    print(json.dumps(summary))
    if report.ok:
        return EXIT_OK
    if report.first_violation is not None:
        v = report.first_violation
        detail = {"time": format_rational(v.time), "i": v.i, "j": v.j,
                  "witness": [dump_point(v.witness.a), dump_point(v.witness.b)],
                  "blocking_edge": None if v.blocking_edge is None else [dump_point(p) for p in v.blocking_edge]}
        print(json.dumps({"violation": detail}), file=sys.stderr)
    if not all(report.paths_ok):
        bad = [i for i, ok in enumerate(report.paths_ok) if not ok]
        print(json.dumps({"paths_not_shortest": bad}), file=sys.stderr)
    return EXIT_VERIFY_FAILED


def cmd_gen(args) -> int:
    seed = args.seed
    if os.environ.get(SEED_ENV):
        try:
            seed = int(os.environ[SEED_ENV])
        except ValueError:
            raise CommandError(EXIT_PARSE, {"error": "parse",
                                            "message": f"{SEED_ENV} must be an integer"}) from None
    if args.vertices < 4 or args.robots < 1:
        raise CommandError(EXIT_INVALID, {"error": "invalid_arguments",
                                          "message": "need --vertices >= 4 and --robots >= 1"})
    try:
        inst = generate_instance(args.vertices, args.robots, seed)
    except GenerationFailed as exc:
        raise CommandError(EXIT_GENERATION, {"error": "generation_failed", "message": str(exc)}) from None
    write_instance(inst, args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    inst = _load_instance(args.instance)
    sweeps, lines = (), ()
    if args.solution:
        try:
            sol = read_solution(args.solution)
        except (ParseError, OSError) as exc:
            raise CommandError(EXIT_PARSE, {"error": "parse", "message": str(exc)}) from None
        sweeps, lines = sol.sweeps, sol.trajectories
    Path(args.output).write_text(render_svg(inst, sweeps, lines))
    return EXIT_OK


def _outcome(result) -> dict:
    if isinstance(result, Stuck):
        return {"outcome": "Stuck", "step": result.step, "angle": result.angle,
                "witness": list(result.witness), "blocked": result.blocked}
    return {"outcome": "Completed", "steps": result.steps}


def analysis_report(inst, angular_steps: int) -> dict:
    dec = decompose(inst)
    report = {
        "q": dump_point(dec.q),
        "regions": [[dump_point(p) for p in r.vertices] for r in dec.regions],
        "partition": [list(g) for g in dec.partition],
    }
    cps = deadlock_critical_points(dec)
    if cps is not None:
        report["critical_points"] = {
            label: {"point": dump_point(p), "carrier_region": cps.carriers[label] + 1}
            for label, p in cps.points.items()}
        order = {}
        for early, late in (("y", "x"), ("y'", "x'")):
            if early in cps.points and late in cps.points:
                order[f"{early} before {late}"] = cps.before(early, late, dec)
        report["critical_order"] = order
    report["rotating_line"] = {pivot: _outcome(rotating_line_run(inst, angular_steps, pivot, dec))
                               for pivot in ("R1R3", "R2R4")}
    return report


def cmd_analyze(args) -> int:
    inst = _load_instance(args.input)
    if args.angular_steps < 8:
        raise CommandError(EXIT_INVALID, {"error": "invalid_arguments",
                                          "message": "--angular-steps must be at least 8"})
    try:
        report = analysis_report(inst, args.angular_steps)
    except NotCrossing as exc:
        raise CommandError(EXIT_WRONG_CASE, {
            "error": "not_crossing", "message": f"{exc}; run `mutvis solve` instead"}) from None
    Path(args.output).write_text(to_json(report))
    outcome = report["rotating_line"]["R1R3"]["outcome"]
    print(f"analyzed: partition sizes {[len(g) for g in report['partition']]}, rotating line {outcome}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mutvis", description="Shortest-path motion with mutual visibility.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="schedule robots on a non-crossing instance")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a solution against its instance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES, help="samples per step")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a random non-crossing instance")
    p.add_argument("--vertices", "-m", type=int, required=True)
    p.add_argument("--robots", "-n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0, help=f"overridden by ${SEED_ENV}")
    p.add_argument("output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("render", help="draw an instance, optionally with a solution, as SVG")
    p.add_argument("instance")
    p.add_argument("output")
    p.add_argument("--solution")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("analyze", help="analyse a crossing instance")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--angular-steps", type=int, default=64)
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "samples", 1) < 1:
        print(json.dumps({"error": "invalid_arguments", "message": "--samples must be >= 1"}), file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except CommandError as exc:
        print(json.dumps(exc.payload), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
