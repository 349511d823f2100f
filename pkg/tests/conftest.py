import pytest
from hypothesis import HealthCheck, settings

import oracles
from equirobust import lp

settings.register_profile(
    "default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", deadline=None, max_examples=300, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session", autouse=True)
def certify_every_lp_solve():
    """Route every optimal simplex answer in this process through the
    independent certificate check."""
    original = lp._finish

    def checked(tab, prog):
        sol = original(tab, prog)
        oracles.SOLVE_LOG.record(prog, sol)
        return sol

    lp._finish = checked
    yield oracles.SOLVE_LOG
    lp._finish = original


@pytest.fixture
def solve_log():
    return oracles.SOLVE_LOG
