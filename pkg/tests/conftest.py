import pytest

from vconway.diagram import parse_diagram


@pytest.fixture
def vhopf():
    # one classical crossing between two components, one virtual crossing implicit
    return parse_diagram("component: O1+\ncomponent: U1+")


@pytest.fixture
def vtref():
    return parse_diagram("component: O1+ O2+ U1+ U2+")


@pytest.fixture
def kink():
    return parse_diagram("component: O1+ U1+")


@pytest.fixture
def trefoil():
    return parse_diagram("component: O1+ U2+ O3+ U1+ O2+ U3+")


@pytest.fixture
def fig8():
    return parse_diagram("component: O1+ U2+ O3- U4- U1+ O2+ U3- O4-")


@pytest.fixture
def classical_hopf():
    return parse_diagram("component: O1+ U2+\ncomponent: U1+ O2+")


@pytest.fixture
def pseudo_hopf():
    # alternating roles the wrong way round: not realizable without virtual
    # crossings, so nothing forces its Z to vanish
    return parse_diagram("component: O1+ O2+\ncomponent: U1+ U2+")


@pytest.fixture
def chain3():
    return parse_diagram("component: O1+ O2+\ncomponent: U1+\ncomponent: U2+")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    import sys

    for name, mod in sys.modules.items():
        if name.rsplit(".", 1)[-1] == "test_acceptance":
            lines = getattr(mod, "SUMMARY_LINES", [])
            if lines:
                terminalreporter.section("acceptance criteria")
                for line in lines:
                    terminalreporter.write_line(line)
            return
