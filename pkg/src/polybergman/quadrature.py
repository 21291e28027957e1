"""Quadrature oracles on the half-line and on the upper half-plane.

Half-line rules are plain (nodes, weights) pairs that integrate ``f(t)``
directly, i.e. any exponential weight has already been folded into the
weights. Two constructions are provided:

* ``gauss-laguerre``: m-point Gauss-Laguerre, rescaled by a decay hint so
  that integrands carrying ``exp(-decay * t)`` are sampled where they live.
* ``truncated-adaptive``: composite Gauss-Legendre in ``s = sqrt(t)`` on
  ``[0, sqrt(T)]``. The substitution makes the ``t**(k + 1/2)`` endpoint
  behaviour of the kernel integrands smooth, and panel edges can be placed
  at the jumps of piecewise integrands (indicator symbols).

The plane rule is a tensor product: trapezoid in ``u`` on a symmetric box,
trapezoid in ``log v`` (geometric grading toward ``y_min``) in ``v``.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import roots_laguerre, roots_legendre

from .errors import NonFiniteSampleError

DEFAULT_NODES = 128
DEFAULT_CUTOFF = 45.0  # exp(-45) ~ 3e-20


@dataclass(frozen=True)
class HalfLineRule:
    nodes: np.ndarray
    weights: np.ndarray
    kind: str = "gauss-laguerre"

    def __post_init__(self):
        nodes = np.asarray(self.nodes, dtype=float)
        weights = np.asarray(self.weights, dtype=float)
        if nodes.shape != weights.shape or nodes.ndim != 1:
            raise ValueError("nodes and weights must be 1-d arrays of equal length")
        if np.any(nodes <= 0.0) or np.any(np.diff(nodes) <= 0.0):
            raise ValueError("nodes must be positive and strictly increasing")
        if np.any(weights <= 0.0):
            raise ValueError("weights must be positive")
        if self.kind not in ("gauss-laguerre", "truncated-adaptive"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    def __len__(self):
        return self.nodes.size

    @classmethod
    def gauss_laguerre(cls, m=DEFAULT_NODES, decay=1.0):
        """Gauss-Laguerre rule for integrands decaying like ``exp(-decay*t)``."""
        if decay <= 0:
            raise ValueError("decay hint must be positive")
        x, w = roots_laguerre(m)
        keep = w > 0.0  # the last few weights underflow for very large m
        x, w = x[keep], w[keep]
        return cls(x / decay, np.exp(np.log(w) + x) / decay, "gauss-laguerre")

    @classmethod
    def truncated(cls, decay=1.0, panels=64, order=16, cutoff=DEFAULT_CUTOFF,
                  breakpoints=()):
        """Composite Gauss-Legendre in sqrt(t) on [0, cutoff / decay].

        ``panels`` uniform panels in ``s = sqrt(t)`` are used; each breakpoint
        inside the range becomes an additional panel edge.
        """
        if decay <= 0:
            raise ValueError("decay hint must be positive")
        t_max = cutoff / decay
        s_max = np.sqrt(t_max)
        edges = np.linspace(0.0, s_max, panels + 1)
        extra = [np.sqrt(b) for b in breakpoints if 0.0 < b < t_max]
        if extra:
            edges = np.unique(np.concatenate([edges, extra]))
        gx, gw = roots_legendre(order)
        a, b = edges[:-1, None], edges[1:, None]
        s = (0.5 * (b - a) * gx + 0.5 * (a + b)).ravel()
        sw = (0.5 * (b - a) * gw).ravel()
        return cls(s * s, 2.0 * s * sw, "truncated-adaptive")


def _check_finite(values):
    if not np.all(np.isfinite(values)):
        raise NonFiniteSampleError("integrand returned a non-finite value at a node")


def integrate_halfline(f, rule=None):
    """Integrate ``f`` over (0, inf) with a half-line rule.

    ``f`` is called once with the whole node array. It may return extra
    leading axes (shape ``(..., m)``); the last axis is summed.
    """
    if rule is None:
        rule = HalfLineRule.gauss_laguerre()
    values = np.asarray(f(rule.nodes))
    _check_finite(values)
    out = values @ rule.weights
    if np.ndim(out) == 0:
        return complex(out)
    return out


def adaptive_halfline(f, decay=1.0, breakpoints=(), cutoff=DEFAULT_CUTOFF,
                      tol=1e-13, order=16, start_panels=16, max_panels=4096):
    """Truncated composite rule with panel doubling until two successive
    estimates agree to ``tol`` (relative, or absolute when the value is ~0).

    Returns ``(value, error_estimate)``.
    """
    panels = start_panels
    prev = integrate_halfline(f, HalfLineRule.truncated(decay, panels, order, cutoff, breakpoints))
    while True:
        panels *= 2
        cur = integrate_halfline(f, HalfLineRule.truncated(decay, panels, order, cutoff, breakpoints))
        err = np.max(np.abs(np.asarray(cur) - np.asarray(prev)))
        scale = max(np.max(np.abs(cur)), 1.0)
        if err <= tol * scale or panels >= max_panels:
            return cur, float(err)
        prev = cur


@dataclass(frozen=True)
class PlaneRule:
    """Truncated box ``[-x_extent, x_extent] x [y_min, y_max]`` in the plane."""

    x_extent: float = 40.0
    y_min: float = 1e-5
    y_max: float = 40.0
    nx: int = 512
    ny: int = 256
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.x_extent <= 0:
            raise ValueError("x_extent must be positive")
        if not 0.0 < self.y_min < self.y_max:
            raise ValueError("need 0 < y_min < y_max")
        if self.nx < 8 or self.ny < 8:
            raise ValueError("resolutions must be at least 8")

    def nodes(self):
        """Return ``(u, wu, v, wv)`` one-dimensional nodes and weights."""
        if "nodes" not in self._cache:
            u = np.linspace(-self.x_extent, self.x_extent, self.nx)
            wu = np.full(self.nx, u[1] - u[0])
            wu[[0, -1]] *= 0.5
            s = np.linspace(np.log(self.y_min), np.log(self.y_max), self.ny)
            v = np.exp(s)
            wv = np.full(self.ny, s[1] - s[0]) * v
            wv[[0, -1]] *= 0.5
            self._cache["nodes"] = (u, wu, v, wv)
        return self._cache["nodes"]

    def refined(self):
        """Twice the nodes in each direction with the truncation pushed out:
        ``x_extent`` doubled at fixed u-spacing and ``y_min`` halved.

        The plane identities are limited by the |u|-truncation of slowly
        decaying kernels, so widening the box is what reduces the error;
        a finer u-spacing alone changes nothing measurable.
        """
        return PlaneRule(2.0 * self.x_extent, 0.5 * self.y_min, self.y_max,
                         2 * self.nx, 2 * self.ny)


def integrate_plane(f, rule=None):
    """Integrate ``f(u, v)`` over the truncated box of ``rule``.

    ``f`` receives broadcastable arrays ``U`` of shape ``(nx, 1)`` and ``V``
    of shape ``(1, ny)`` and may return extra leading axes.
    """
    if rule is None:
        rule = PlaneRule()
    u, wu, v, wv = rule.nodes()
    values = np.asarray(f(u[:, None], v[None, :]))
    values = np.broadcast_to(values, values.shape[:-2] + (u.size, v.size))
    _check_finite(values)
    out = (values @ wv) @ wu
    if np.ndim(out) == 0:
        return complex(out)
    return out
