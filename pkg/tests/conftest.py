import os

import pytest
from hypothesis import HealthCheck, settings

from mutvis.fixtures import L_SHAPE, SQUARE
from mutvis.polygon import validate_simple

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=1000,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def square():
    return validate_simple(SQUARE)


@pytest.fixture
def l_shape():
    return validate_simple(L_SHAPE)


@pytest.fixture(scope="session")
def small_corpus():
    """Generated non-crossing instances, with their solutions, reused across test modules."""
    from mutvis.generator import generate_instance
    from mutvis.scheduler import solve_with_corridor

    out = []
    for seed in range(1, 16):
        inst = generate_instance(24 + seed, 1 + seed % 7, seed)
        corridor, schedule, trajs = solve_with_corridor(inst)
        out.append((seed, inst, corridor, schedule, trajs))
    return out


CRITERIA_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Print and remember one PASS/FAIL line; the run summary repeats them all."""
    def report(number, name, ok, detail=""):
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {name}" + (f" ({detail})" if detail else "")
        print(line)
        CRITERIA_LINES.append(line)
        return ok
    return report


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA_LINES:
            terminalreporter.write_line(line)
