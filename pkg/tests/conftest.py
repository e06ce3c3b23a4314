import pytest
from hypothesis import HealthCheck, settings

from qha.auslander import builtin
from qha.exactlin import Field

settings.register_profile("qha", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("qha")

GF101 = Field(101)
GF2 = Field(2)

_ACCEPTANCE: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def gamma2():
    return builtin("gamma_2", GF101)


@pytest.fixture(scope="session")
def gamma3():
    return builtin("gamma_3", GF101)


@pytest.fixture(scope="session")
def gamma4():
    return builtin("gamma_4", GF101)


@pytest.fixture(scope="session")
def a2():
    return builtin("a2_path", GF101)


@pytest.fixture(scope="session")
def aus_a3():
    return builtin("aus_a3", GF101)
