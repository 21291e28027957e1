import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polybergman import transforms
from polybergman.quadrature import HalfLineRule, PlaneRule
from polybergman.transforms import (HalfLineProfile, apply_Rn, apply_Rn_star,
                                    apply_Rn_star_grid, build_image_element,
                                    build_image_element_grid, vector_profile)

# mpmath: h(z) for n = 2, a(t) = t e^{-t}
H_TE = {
    1j: np.array([0.11935107510397761891, 0.048112522432468813709]),
    1 + 2j: np.array([0.022630290232178927947 + 0.027031509916978706558j,
                      0.017778000634727249839 + 0.012490235284238723732j]),
}


def _pair(n):
    return vector_profile([lambda t, c=c: t * t * np.exp(-(1 + 0.25 * c) * t) for c in range(n)])


def test_rn_star_zero_and_value():
    zero = vector_profile([lambda t: np.zeros_like(t)] * 2)
    assert apply_Rn_star(2, zero, 0.3 + 1j) == 0
    f = [lambda t: np.sqrt(2 * t) * np.exp(-t)]
    assert abs(apply_Rn_star(1, f, 1j) - 1 / (2 * math.sqrt(2 * math.pi))) < 1e-14


@given(st.floats(min_value=-3, max_value=3), st.floats(min_value=0.1, max_value=3))
def test_rn_star_linear(x, y):
    f, g = _pair(2), vector_profile([lambda t: t * np.exp(-2 * t), lambda t: np.exp(-t) * t])
    fg = vector_profile([lambda t, a=a, b=b: a(t) + b(t) for a, b in zip(f, g)])
    rule = HalfLineRule.truncated(1.0, panels=128)
    z = complex(x, y)
    lhs = apply_Rn_star(2, fg, z, rule)
    rhs = apply_Rn_star(2, f, z, rule) + apply_Rn_star(2, g, z, rule)
    assert abs(lhs - rhs) < 1e-12


def test_rn_star_grid_matches_pointwise():
    rule = PlaneRule(nx=32, ny=16)
    u, _, v, _ = rule.nodes()
    grid = apply_Rn_star_grid(3, _pair(3), rule)
    for i, j in [(3, 2), (16, 8), (30, 15)]:
        assert abs(grid[i, j] - apply_Rn_star(3, _pair(3), complex(u[i], v[j]))) < 1e-10


def test_rn_rejects_nonpositive_x():
    with pytest.raises(ValueError):
        apply_Rn(2, lambda u, v: 0 * u * v, 0.0)
    assert np.all(apply_Rn(2, lambda u, v: 0 * u * v, 1.0, PlaneRule(nx=16, ny=16)) == 0)


def test_rn_star_rejects_wrong_length_and_point():
    with pytest.raises(ValueError):
        apply_Rn_star(2, _pair(3), 1j)
    with pytest.raises(ValueError):
        apply_Rn_star(2, _pair(2), -1j)


def test_build_image_element_values():
    h = build_image_element(1, lambda t: np.exp(-t), 1j)
    assert abs(h[0] - 1 / (4 * math.sqrt(2))) < 1e-14
    a = HalfLineProfile(lambda t: t * np.exp(-t), 1.0)
    for z, expected in H_TE.items():
        assert np.max(np.abs(build_image_element(2, a, z) - expected)) < 1e-14
    zero = build_image_element(3, lambda t: np.zeros_like(t), 1j)
    assert np.all(zero == 0)


def test_image_element_small_t_profile_favours_last_component():
    # M_n(t) -> e_n as t -> 0
    a = HalfLineProfile(lambda t: np.exp(-((t - 0.01) / 0.005) ** 2), 1.0)
    h = build_image_element(3, a, 1j)
    assert abs(h[2]) > 5 * abs(h[0]) and abs(h[2]) > 5 * abs(h[1])


def test_image_grid_matches_pointwise():
    rule = PlaneRule(nx=32, ny=16)
    u, _, v, _ = rule.nodes()
    a = HalfLineProfile(lambda t: t * np.exp(-t), 1.0)
    grid = build_image_element_grid(2, a, rule)
    for i, j in [(4, 3), (20, 10)]:
        assert np.max(np.abs(grid[:, i, j] - build_image_element(2, a, complex(u[i], v[j])))) < 1e-10


@pytest.mark.slow
@pytest.mark.parametrize("n", [1, 2, 3])
def test_round_trip_and_isometry_improve(n):
    f = _pair(n)
    xs = np.array([0.5, 1.0, 2.0])
    exact = np.array([p(xs) for p in f])
    errs, isos = [], []
    for rule in (PlaneRule(), PlaneRule().refined()):
        image = apply_Rn_star_grid(n, f, rule)
        back = apply_Rn(n, image, xs, rule)
        errs.append(np.max(np.abs(back - exact)) / np.max(np.abs(exact)))
        isos.append(abs(transforms.plane_norm(image, rule) / transforms.halfline_norm(list(f)) - 1))
    assert errs[0] < 1e-2 and isos[0] < 1e-2
    assert errs[1] < errs[0] and isos[1] < isos[0]


def test_isometry_on_image():
    rule = PlaneRule()
    a = HalfLineProfile(lambda t: t * np.exp(-(t - 1) ** 2), 1.0)
    ratio = transforms.plane_norm(build_image_element_grid(2, a, rule), rule) / transforms.halfline_norm(a)
    assert 0.99 <= ratio <= 1.01


def test_halfline_norm():
    assert abs(transforms.halfline_norm(HalfLineProfile(lambda t: np.exp(-t))) - math.sqrt(0.5)) < 1e-13
