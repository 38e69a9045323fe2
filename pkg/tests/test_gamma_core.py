from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbessel import DomainError, k_gamma, k_gamma_reciprocal_product, log_gamma, log_k_gamma
from kbessel.gamma_core import EULER_GAMMA


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (5.0, math.log(24.0)), (0.5, math.log(math.sqrt(math.pi)))],
)
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-13, abs=1e-15)


@pytest.mark.parametrize("x", [0.0, -1.0, math.inf, math.nan])
def test_log_gamma_domain(x):
    with pytest.raises(DomainError):
        log_gamma(x)


def test_log_gamma_against_factorials():
    for n in range(1, 60):
        assert log_gamma(n + 1.0) == pytest.approx(math.log(math.factorial(n)), rel=1e-13)


@pytest.mark.parametrize("k", [0.25, 0.5, 1.0, 2.0, 5.0])
def test_k_gamma_unit_at_k(k):
    assert k_gamma(k, k) == pytest.approx(1.0, rel=1e-14)


def test_k_gamma_examples():
    assert k_gamma(4.0, 2.0) == pytest.approx(2.0, rel=1e-14)
    assert k_gamma(5.0, 1.0) == pytest.approx(24.0, rel=1e-14)


@pytest.mark.parametrize("z, k", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0)])
def test_k_gamma_domain(z, k):
    with pytest.raises(DomainError):
        k_gamma(z, k)


def test_k_gamma_recurrence_grid():
    zs = [0.1 * i for i in range(1, 501)]
    for k in (0.25, 0.5, 1.0, 2.0, 5.0):
        for z in zs:
            lhs = k_gamma(z + k, k)
            assert abs(lhs - z * k_gamma(z, k)) / lhs < 1e-12


def test_k_gamma_reduces_to_gamma():
    for z in (0.3, 1.7, 4.2, 11.5, 30.0):
        assert k_gamma(z, 1.0) == pytest.approx(math.exp(log_gamma(z)), rel=1e-12)


def test_log_k_gamma_large_argument_does_not_overflow():
    # Gamma_1(400) overflows a double; its logarithm does not
    assert log_k_gamma(400.0, 1.0) == pytest.approx(math.lgamma(400.0), rel=1e-14)


def test_reciprocal_product_examples():
    assert k_gamma_reciprocal_product(1.0, 1.0, 100_000) == pytest.approx(1.0, abs=1e-4)
    assert k_gamma_reciprocal_product(2.0, 1.0, 100_000) == pytest.approx(1.0, abs=1e-3)
    assert k_gamma_reciprocal_product(3.0, 2.0, 100_000) == pytest.approx(1.0 / k_gamma(3.0, 2.0), rel=1e-3)


def test_reciprocal_product_error_shrinks():
    target = 1.0 / k_gamma(3.0, 2.0)
    errs = [abs(k_gamma_reciprocal_product(3.0, 2.0, n) - target) for n in (1_000, 10_000, 100_000)]
    assert errs[0] > errs[1] > errs[2]


def test_euler_constant():
    assert EULER_GAMMA == 0.57721566490153286


@settings(max_examples=60, deadline=None)
@given(
    z=st.floats(min_value=0.05, max_value=60.0),
    k=st.floats(min_value=0.5, max_value=6.0),
)
def test_k_gamma_recurrence_property(z, k):
    # z/k <= 120 keeps Gamma_k(z + k) inside double range
    lhs = k_gamma(z + k, k)
    assert abs(lhs - z * k_gamma(z, k)) / lhs < 1e-12
