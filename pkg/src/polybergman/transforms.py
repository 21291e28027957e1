"""Bargmann-type transforms between the half-plane and the half-line.

``R_n^*`` sends ``f in (L2(R+))^n`` to a polyanalytic function of order n,

    (R_n^* f)(x, y) = (2 pi)^{-1/2} int_0^inf e^{ixt} sqrt(2t) N_n(2ty)^t f(t) dt,

and ``R_n`` is its left inverse, computed here by plane quadrature. Images of
the projection P_T are built from a scalar profile ``a`` as

    h(z) = (2 pi)^{-1/2} int_0^inf e^{itz} sqrt(2t) a(t) M_n(t) dt.

Everything is evaluated pointwise or on the tensor grid of a ``PlaneRule``;
no dense operator matrices are formed.
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .projections import m_vector
from .quadrature import (DEFAULT_CUTOFF, HalfLineRule, PlaneRule, _check_finite,
                         adaptive_halfline)
from .specfun import laguerre_table

INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class HalfLineProfile:
    """A function on the half-line with a declared exponential decay rate."""

    func: Callable[[np.ndarray], np.ndarray]
    decay: float = 1.0

    def __call__(self, t):
        return np.asarray(self.func(np.asarray(t, dtype=float)))


def zero_profile():
    return HalfLineProfile(lambda t: np.zeros(np.shape(t)), 1.0)


def vector_profile(funcs, decay=1.0):
    """Tuple of ``HalfLineProfile`` from plain callables."""
    return tuple(f if isinstance(f, HalfLineProfile) else HalfLineProfile(f, decay)
                 for f in funcs)


def _decay_of(profiles):
    return min(p.decay for p in profiles)


def _stack(profiles, t):
    return np.array([p(t) for p in profiles], dtype=complex)


def oscillatory_rule(decay, omega, cutoff=DEFAULT_CUTOFF, order=16):
    """Truncated rule resolving ``exp(i omega t)`` up to ``|omega|``: roughly
    one 16-point panel per oscillation over the truncated range."""
    t_max = cutoff / decay
    panels = max(64, int(math.ceil(t_max * abs(omega) / (2.0 * math.pi))))
    return HalfLineRule.truncated(decay, panels=panels, order=order, cutoff=cutoff)


def _halfline_point(integrand, decay, omega, n_cutoff=0):
    value, _ = adaptive_halfline(
        integrand, decay=decay, cutoff=DEFAULT_CUTOFF + 10.0 * n_cutoff, tol=1e-13,
        start_panels=max(16, int(abs(omega) * DEFAULT_CUTOFF / decay / (2 * math.pi))))
    return value


def apply_Rn_star(n, f, z, rule=None):
    """(R_n^* f)(z) at one point of the upper half-plane.

    ``f`` is a sequence of n ``HalfLineProfile``. With ``rule=None`` an
    adaptive truncated rule is used.
    """
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("z must lie in the upper half-plane")
    f = vector_profile(f)
    if len(f) != n:
        raise ValueError(f"expected {n} components, got {len(f)}")

    def integrand(t):
        ell = laguerre_table(n - 1, 2.0 * t * z.imag)
        return (INV_SQRT_2PI * np.exp(1j * z.real * t) * np.sqrt(2.0 * t)
                * np.sum(ell * _stack(f, t), axis=0))

    if rule is not None:
        values = integrand(rule.nodes)
        _check_finite(values)
        return complex(values @ rule.weights)
    return complex(_halfline_point(integrand, _decay_of(f), z.real, n - 1))


def apply_Rn_star_grid(n, f, plane_rule, rule=None):
    """R_n^* f on the tensor grid of ``plane_rule``; shape ``(nx, ny)``."""
    f = vector_profile(f)
    u, _, v, _ = plane_rule.nodes()
    if rule is None:
        rule = oscillatory_rule(_decay_of(f), plane_rule.x_extent,
                                cutoff=DEFAULT_CUTOFF + 10.0 * (n - 1))
    t, wt = rule.nodes, rule.weights
    ell = laguerre_table(n - 1, 2.0 * t[:, None] * v[None, :])  # (n, Nt, ny)
    ft = _stack(f, t)  # (n, Nt)
    right = np.einsum("knv,kn->nv", ell, ft) * (wt * np.sqrt(2.0 * t))[:, None]
    left = np.exp(1j * u[:, None] * t[None, :])
    out = INV_SQRT_2PI * (left @ right)
    _check_finite(out)
    return out


def apply_Rn(n, phi, x, plane_rule=None):
    """(R_n phi)(x) for x > 0 by plane quadrature; returns an n-vector (or
    ``(n, len(x))`` for array ``x``).

    ``phi`` is either a callable ``phi(U, V)`` or an array of samples on the
    grid of ``plane_rule``.
    """
    if plane_rule is None:
        plane_rule = PlaneRule()
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs <= 0.0):
        raise ValueError("R_n is evaluated only at x > 0")
    u, wu, v, wv = plane_rule.nodes()
    if callable(phi):
        samples = np.asarray(phi(u[:, None], v[None, :]), dtype=complex)
        samples = np.broadcast_to(samples, (u.size, v.size))
    else:
        samples = np.asarray(phi, dtype=complex)
    _check_finite(samples)
    # inner integral over u for each x: (len(x), ny)
    fourier = (np.exp(-1j * xs[:, None] * u[None, :]) * wu) @ samples
    ell = laguerre_table(n - 1, 2.0 * xs[:, None] * v[None, :])  # (n, len(x), ny)
    out = INV_SQRT_2PI * np.sqrt(2.0 * xs) * np.einsum("kxv,xv->kx", ell, fourier * wv)
    if np.ndim(x) == 0:
        return out[:, 0]
    return out


def build_image_element(n, a, z, rule=None):
    """h(z) for the element of Im P_T generated by the profile ``a``."""
    z = complex(z)
    if not z.imag > 0:
        raise ValueError("z must lie in the upper half-plane")
    if not isinstance(a, HalfLineProfile):
        a = HalfLineProfile(a)

    def integrand(t):
        return (INV_SQRT_2PI * np.exp(1j * z * t) * np.sqrt(2.0 * t) * a(t)
                * m_vector(n, t))

    if rule is not None:
        values = integrand(rule.nodes)
        _check_finite(values)
        return values @ rule.weights
    return np.asarray(_halfline_point(integrand, a.decay + z.imag, z.real))


def build_image_element_grid(n, a, plane_rule, rule=None):
    """h on the tensor grid of ``plane_rule``; shape ``(n, nx, ny)``."""
    if not isinstance(a, HalfLineProfile):
        a = HalfLineProfile(a)
    u, _, v, _ = plane_rule.nodes()
    if rule is None:
        rule = oscillatory_rule(a.decay, plane_rule.x_extent)
    t, wt = rule.nodes, rule.weights
    base = INV_SQRT_2PI * wt * np.sqrt(2.0 * t) * a(t)  # (Nt,)
    damp = np.exp(-t[:, None] * v[None, :])  # (Nt, ny)
    left = np.exp(1j * u[:, None] * t[None, :])  # (nx, Nt)
    m = m_vector(n, t)  # (n, Nt)
    out = np.stack([left @ ((base * m[k])[:, None] * damp) for k in range(n)])
    _check_finite(out)
    return out


def plane_norm(values, plane_rule):
    """L2 norm over the truncated box; leading axes are summed as components."""
    _, wu, _, wv = plane_rule.nodes()
    sq = np.abs(np.asarray(values)) ** 2
    sq = sq.reshape((-1,) + sq.shape[-2:]).sum(axis=0)
    return float(np.sqrt(wu @ sq @ wv))


def halfline_norm(a, decay=None):
    """L2 norm of a profile (or of a vector of profiles) on the half-line."""
    profiles = vector_profile(a if isinstance(a, (list, tuple)) else [a])
    d = decay if decay is not None else _decay_of(profiles)
    value, _ = adaptive_halfline(lambda t: np.sum(np.abs(_stack(profiles, t)) ** 2, axis=0),
                                 decay=2.0 * d, tol=1e-14)
    return math.sqrt(abs(value))
