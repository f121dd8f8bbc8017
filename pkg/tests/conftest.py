import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from permtriples import PermGroup, parse_cycles  # noqa: E402


def perm(text, n):
    return parse_cycles(text, n)


def grp(n, *gens):
    return PermGroup(n, [parse_cycles(g, n) for g in gens])


def elems(group):
    """Element set as raw image tuples, for comparison with the oracles."""
    return frozenset(e.images for e in group.elements())


@pytest.fixture
def S3():
    return grp(3, "(1 2)", "(1 2 3)")


@pytest.fixture
def S4():
    return grp(4, "(1 2)", "(1 2 3 4)")


@pytest.fixture
def A4():
    return grp(4, "(1 2 3)", "(2 3 4)")


@pytest.fixture
def V4():
    return grp(4, "(1 2)(3 4)", "(1 3)(2 4)")


# One line per acceptance criterion, printed in the terminal summary.
ACCEPTANCE_LINES: list[tuple[int, str]] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
