import pytest
from hypothesis import HealthCheck, settings

from qcverify.heisenberg import build_group_model
from qcverify.quaternion import make_hypercomplex_triple
from qcverify.sphere import build_sphere_model

settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")

# filled in by test_acceptance.py, printed once at the end of the run
ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def triples():
    return {n: make_hypercomplex_triple(n) for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def group1():
    return build_group_model(1)


@pytest.fixture(scope="session")
def group2():
    return build_group_model(2)


@pytest.fixture(scope="session")
def sphere2():
    return build_sphere_model(2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
