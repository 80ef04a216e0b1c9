import json
import math
from pathlib import Path

import pytest

from cantilever.model import make_params

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fig1():
    return make_params(1.2, 3.7, math.pi / 4, 0.2)


@pytest.fixture(scope="session")
def linear():
    return make_params(0.0, 0.0, math.pi / 4, 0.2)


@pytest.fixture(scope="session")
def golden():
    return json.loads((FIXTURES / "golden.json").read_text())


ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record a one-line PASS/FAIL verdict for an acceptance criterion, then assert it."""

    def check(label, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}")
        assert ok, f"{label}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
