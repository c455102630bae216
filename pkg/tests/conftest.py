import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cotangent_kahler.frame import PhasePoint
from cotangent_kahler.spaceform import SpaceFormParams

settings.register_profile("default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def hyperbolic3():
    return SpaceFormParams(3, -1.0)


@pytest.fixture
def generic_point():
    return PhasePoint(np.array([0.3, -0.4, 0.2]), np.array([0.7, 1.1, -0.5]))


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(criterion: int, title: str, ok: bool, detail: str) -> str:
    line = f"criterion {criterion} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
