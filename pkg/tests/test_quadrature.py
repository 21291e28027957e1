import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polybergman.errors import NonFiniteSampleError
from polybergman.quadrature import (HalfLineRule, PlaneRule, adaptive_halfline,
                                    integrate_halfline, integrate_plane)


@pytest.mark.parametrize("m", [8, 16, 32])
def test_gauss_laguerre_exact_on_polynomials(m):
    rule = HalfLineRule.gauss_laguerre(m)
    for k in range(2 * m):
        value = integrate_halfline(lambda t: t ** k * np.exp(-t), rule)
        assert abs(value - math.factorial(k)) <= 1e-12 * math.factorial(k)


def test_gauss_laguerre_decay_hint():
    rule = HalfLineRule.gauss_laguerre(32, decay=4.0)
    assert abs(integrate_halfline(lambda t: np.exp(-4 * t), rule) - 0.25) < 1e-14


def test_truncated_rule_handles_half_integer_powers():
    # int t^{3/2} e^{-t} dt = Gamma(5/2); Gauss-Laguerre stalls near 1e-6 on this
    value = integrate_halfline(lambda t: t ** 1.5 * np.exp(-t), HalfLineRule.truncated())
    assert abs(value - math.gamma(2.5)) < 1e-13


def test_truncated_rule_breakpoints():
    rule = HalfLineRule.truncated(breakpoints=(1.3,))
    value = integrate_halfline(lambda t: np.where(t < 1.3, np.exp(-t), 0.0), rule)
    assert abs(value - (1 - math.exp(-1.3))) < 1e-14


@pytest.mark.parametrize("nodes,weights", [
    ([1.0, 0.5], [1.0, 1.0]),
    ([0.0, 1.0], [1.0, 1.0]),
    ([1.0, 2.0], [1.0, -1.0]),
])
def test_rule_validation(nodes, weights):
    with pytest.raises(ValueError):
        HalfLineRule(np.array(nodes), np.array(weights))


def test_bad_kind_and_decay():
    with pytest.raises(ValueError):
        HalfLineRule(np.array([1.0]), np.array([1.0]), kind="simpson")
    with pytest.raises(ValueError):
        HalfLineRule.gauss_laguerre(8, decay=0.0)


def test_nonfinite_sample_raises():
    with pytest.raises(NonFiniteSampleError):
        integrate_halfline(lambda t: np.where(t > 1, np.nan, 1.0))


def test_vector_valued_integrand():
    out = integrate_halfline(lambda t: np.array([np.exp(-t), t * np.exp(-t)]))
    assert np.allclose(out, [1.0, 1.0], atol=1e-13)


@given(st.floats(min_value=0.2, max_value=5.0), st.floats(min_value=-6.0, max_value=6.0))
def test_adaptive_oscillatory_laplace(a, b):
    # int e^{-(a - ib) t} dt = 1 / (a - ib)
    value, err = adaptive_halfline(lambda t: np.exp(-(a - 1j * b) * t), decay=a,
                                   start_panels=max(16, int(abs(b) * 45 / a / 6)))
    assert abs(value - 1 / (a - 1j * b)) < 1e-11
    assert err < 1e-10


def test_plane_rule_gaussian():
    rule = PlaneRule(x_extent=10.0, y_min=1e-6, y_max=30.0, nx=256, ny=256)
    value = integrate_plane(lambda u, v: np.exp(-u * u) * np.exp(-v), rule)
    assert abs(value - math.sqrt(math.pi) * (math.exp(-1e-6) - math.exp(-30))) < 1e-9


def test_plane_rule_validation_and_refinement():
    with pytest.raises(ValueError):
        PlaneRule(y_min=0.0)
    with pytest.raises(ValueError):
        PlaneRule(nx=4)
    r = PlaneRule()
    f = r.refined()
    assert f.y_min == r.y_min / 2 and f.x_extent == 2 * r.x_extent
    assert f.nx > r.nx and f.ny > r.ny
