from fractions import Fraction as F

import pytest

from ambipersuade import ContingentPlan, fixtures

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def exp0():
    return fixtures.load_game("exp0")


@pytest.fixture(scope="session")
def exp():
    return fixtures.load_game("exp")


@pytest.fixture(scope="session")
def exp0_star(exp0):
    return fixtures.load_signal("exp0_star", exp0)


@pytest.fixture(scope="session")
def exp_star(exp):
    return fixtures.load_signal("exp_star", exp)


@pytest.fixture(scope="session")
def exp0_ambiguous(exp0):
    return fixtures.load_ambiguous("exp0_ambiguous", exp0)


@pytest.fixture(scope="session")
def exp_ambiguous(exp):
    return fixtures.load_ambiguous("exp_ambiguous", exp)


@pytest.fixture(scope="session")
def pi_eps():
    return fixtures.perturbed_signal(F(1, 20))


@pytest.fixture(scope="session")
def bc(exp):
    return ContingentPlan.pure([exp.action_index("b"), exp.action_index("c")], 3)


@pytest.fixture(scope="session")
def new_sq(exp0):
    return ContingentPlan.pure([exp0.action_index("New"), exp0.action_index("Status Quo")], 2)


@pytest.fixture
def record_criterion():
    """Collect one PASS/FAIL line per acceptance criterion for the terminal summary."""

    def record(number, title, ok, detail=""):
        ACCEPTANCE_LINES.append((number, title, ok, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, detail in sorted(ACCEPTANCE_LINES):
        line = f"[{'PASS' if ok else 'FAIL'}] {number:>2}. {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
