import pytest

from stretch_fpp import stationary_by_power_iteration


@pytest.fixture(scope="session")
def rho_power():
    """Operator fixed point on the reference grid, shared across the suite.

    The power iteration at m=2001 takes a few seconds; several tests and
    acceptance criteria consume the same converged density, so it is
    computed once per session.
    """
    return stationary_by_power_iteration(hi=10.0, m=2001, tol=1e-10)
