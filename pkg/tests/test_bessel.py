import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import frozen_values as fv
from stretch_fpp.bessel import bessel_j, check_recurrence

SQRT2 = math.sqrt(2.0)


@pytest.mark.parametrize(
    "nu, x, want",
    [
        (0, 2.0, fv.J0_2),
        (1, 2.0, fv.J1_2),
        (2, 2.0, fv.J2_2),
        (0, SQRT2, fv.J0_SQRT2),
        (1, SQRT2, fv.J1_SQRT2),
        (2, SQRT2, fv.J2_SQRT2),
        (1, 1.0, fv.J1_1),
        (1, 2.0 * math.exp(-0.5), fv.J1_2E_HALF),
    ],
)
def test_matches_frozen_oracle_values(nu, x, want):
    assert abs(bessel_j(nu, x) - want) < 1e-14


def test_values_at_zero_argument():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(2, 0.0) == 0.0


@pytest.mark.parametrize("nu", [-1, 3, 0.5])
def test_unsupported_order_rejected(nu):
    with pytest.raises(ValueError):
        bessel_j(nu, 1.0)


@pytest.mark.parametrize("x", [-0.1, 4.0 + 1e-9, 17.0])
def test_argument_outside_domain_rejected(x):
    with pytest.raises(ValueError):
        bessel_j(0, x)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 3.7, 4.0])
def test_series_is_settled_well_before_the_term_cap(x):
    """The 1e-16 next-term cutoff binds by k ~ 16 on [0, 4], so raising
    max_terms cannot change the sum."""
    for nu in (0, 1, 2):
        assert bessel_j(nu, x, max_terms=30) == bessel_j(nu, x, max_terms=60)


@pytest.mark.parametrize("x", [0.5, 1.0, SQRT2, 2.0, 3.5, 4.0])
def test_three_term_recurrence(x):
    assert check_recurrence(x) < 1e-13


def test_recurrence_check_domain():
    with pytest.raises(ValueError):
        check_recurrence(0.0)
    with pytest.raises(ValueError):
        check_recurrence(4.5)


@pytest.mark.parametrize("x", [1.0, 2.0, 3.5])
def test_squared_norm_identity(x):
    """J0^2 + 2 sum_k Jk^2 telescopes to 1.

    Orders above 2 come from the upward recurrence, which is only trusted
    here for the tail where the terms are tiny and enter squared.
    """
    jk = [bessel_j(0, x), bessel_j(1, x)]
    for k in range(1, 12):
        jk.append((2.0 * k / x) * jk[k] - jk[k - 1])
    total = jk[0] ** 2 + 2.0 * sum(v * v for v in jk[1:])
    assert abs(total - 1.0) < 1e-8


@settings(max_examples=300, deadline=None)
@given(x=st.floats(0.0, 4.0), nu=st.sampled_from([0, 1, 2]))
def test_magnitude_bound(x, nu):
    # |J_nu| <= 1 for nonnegative integer order; a cheap whole-domain sanity net
    assert abs(bessel_j(nu, x)) <= 1.0 + 1e-15
