import pytest
from hypothesis import settings

from kolab.complexity import cached_table
from kolab.params import SchemeParams

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def params():
    return SchemeParams()


@pytest.fixture(scope="session")
def small_params():
    """pad = slack = 1 puts case-3 outputs at 16 bits (p = 5, k = 3)."""
    return SchemeParams(pad=1, slack=1, enum_bound=17)


@pytest.fixture(scope="session")
def v_table(params):
    return cached_table("v", "", params.enum_bound, params)


@pytest.fixture(scope="session")
def u_table(params):
    return cached_table("u", "", params.enum_bound, params)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
