import sys

import pytest

from ucphase.polyring import Poly


@pytest.fixture
def cut():
    return (4, 4)


def x(n, cutoffs=(4, 4)):
    return Poly.var("x", n, cutoffs)


def y(n, cutoffs=(4, 4)):
    return Poly.var("y", n, cutoffs)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "VERDICTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split(".")[0].split()[-1])):
            terminalreporter.write_line(line)
