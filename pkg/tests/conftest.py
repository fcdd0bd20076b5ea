import pytest
from hypothesis import HealthCheck, settings

from hypercurrent.curve import parse_curve

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

QUARTIC = "t^4 - 2*c*t^2 + 1"
HEXIC = "t^6 - 2*b*t^3 + 1"


@pytest.fixture(scope="session")
def quartic():
    return parse_curve(QUARTIC)


@pytest.fixture(scope="session")
def hexic():
    return parse_curve(HEXIC)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
