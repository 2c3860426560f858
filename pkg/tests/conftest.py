import pytest

from ksctx.enumeration import make_assignment
from ksctx.scenario import builtin_chsh, parse_scenario

# rows of the lambda=4 table, columns a_b a_b' a'_b a'_b' b_a b_a' b'_a b'_a'
TABLE_ONE = [
    (+1, +1, +1, +1, +1, +1, +1, -1),
    (-1, -1, -1, -1, -1, -1, -1, +1),
    (+1, +1, +1, +1, +1, +1, +1, +1),
    (-1, -1, -1, -1, -1, -1, -1, -1),
]

SINGLE_CONTEXT = """\
observable Left a
observable Right b
context a b
functional a b +1
"""

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def chsh():
    return builtin_chsh()


@pytest.fixture(scope="session")
def single():
    return parse_scenario(SINGLE_CONTEXT)


@pytest.fixture
def table_one(chsh):
    return [make_assignment(chsh, row) for row in TABLE_ONE]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")
