import pytest
from hypothesis import HealthCheck, settings

from hesse.numerics import PrecisionContext

settings.register_profile("hesse", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("hesse")


@pytest.fixture(scope="session")
def ctx20():
    return PrecisionContext(20)


@pytest.fixture(scope="session")
def ctx30():
    return PrecisionContext(30)


@pytest.fixture(scope="session")
def ctx40():
    return PrecisionContext(40)


ACCEPTANCE_LINES = []


@pytest.fixture
def report_criterion():
    def record(result):
        line = result.line()
        ACCEPTANCE_LINES.append(line)
        print(line)
        return result

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
