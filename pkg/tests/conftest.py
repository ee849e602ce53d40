import os
import sys

# every DPAG produced anywhere in the suite gets the arrowhead-shape check
os.environ.setdefault("CYCLICFCI_VALIDATE_OUTPUT", "1")
sys.path.insert(0, os.path.dirname(__file__))

import pytest  # noqa: E402

from cyclicfci.fixtures import example_dpag, example_graph  # noqa: E402


@pytest.fixture(scope="session")
def example_g():
    return example_graph()


@pytest.fixture(scope="session")
def example_p():
    return example_dpag()


def pytest_terminal_summary(terminalreporter):
    from reporting import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(LINES, key=lambda s: int(s.split()[1][1:])):
            terminalreporter.write_line(line)
