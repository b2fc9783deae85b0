import sys
from fractions import Fraction as Fr

import pytest
from hypothesis import settings

from qvar.instance import make_instance

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def two_point():
    # d(b, a) = 1, phi(a) = 2, phi(b) = 1
    return make_instance(["a", "b"], {"d": [[0, 5], [1, 0]]}, objectives={"phi": [2, 1]})


@pytest.fixture
def chain4():
    # f(p_i) = 3 - i, d(p_{i+1}, p_i) = 1 and large elsewhere
    n, big = 4, 100
    d = [[0 if a == b else (a - b if a > b else big) for b in range(n)] for a in range(n)]
    return make_instance([f"p{i}" for i in range(n)], {"d": d}, objectives={"f": [3, 2, 1, 0]})


@pytest.fixture
def du01():
    # d_u(a, b) = (b - a)^+ on {0, 1}
    return make_instance(["0", "1"], {"du": [[0, 1], [0, 0]]}, objectives={"f": [0, 0]})


def frac(*xs):
    return [Fr(x) for x in xs]


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in list(sys.modules.items()) if name.rsplit(".", 1)[-1] == "test_acceptance"), None)
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
