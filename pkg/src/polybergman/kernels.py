"""Reproducing kernels of the images of P_T and P.

With ``zeta = z - conj(w)`` and ``G_m(z, w) = -1 / (pi (zeta + m i)^2)``,

    K_nn = G_{2(n-1)},    K_jk = G_{j+k-2} - G_{j+k}    (j, k < n),
    K_jn = K_nj = (1/pi) J(p) (beta(p) + 1/(p+1)),  p = -i zeta + j + n - 2.

Every closed form is paired with a quadrature oracle of the integral
representation ``(1/pi) int t e^{it zeta} P_gamma(t) dt``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import PoleError
from .projections import m_vector
from .quadrature import DEFAULT_CUTOFF, HalfLineRule, _check_finite, adaptive_halfline
from .specfun import laguerre_table, laplace_J, laplace_tJ, nielsen_beta

INV_PI = 1.0 / math.pi


@dataclass(frozen=True)
class KernelMatrix:
    n: int
    entries: np.ndarray
    z: complex
    w: complex

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def __getitem__(self, jk):
        """1-based entry access ``K[j, k]``."""
        j, k = jk
        return complex(self.entries[j - 1, k - 1])


def _point(z, name="z"):
    z = complex(z)
    if not z.imag > 0 or not math.isfinite(z.real):
        raise ValueError(f"{name} must lie in the upper half-plane, got {z}")
    return z


def _zeta(z, w):
    return np.asarray(z, dtype=complex) - np.conj(np.asarray(w, dtype=complex))


def g_kernel(m, z, w):
    """G_m(z, w) = -1 / (pi (z - conj(w) + m i)^2); scalars or arrays."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    d = _zeta(z, w) + 1j * m
    if np.any(d == 0):
        raise PoleError("z - conj(w) + m i vanishes")
    out = -INV_PI / (d * d)
    return complex(out) if np.ndim(out) == 0 else out


def kernel_jn(j, n, z, w, via="beta"):
    """K_jn for j < n. ``via='beta'`` uses J (beta + 1/(p+1)); ``via='laplace'``
    uses the independent digamma-difference form of -J'(p)."""
    p = -1j * _zeta(z, w) + j + n - 2
    if via == "beta":
        out = INV_PI * laplace_J(p) * (nielsen_beta(p) + 1.0 / (p + 1.0))
    elif via == "laplace":
        out = INV_PI * laplace_tJ(p)
    else:
        raise ValueError(f"unknown path {via!r}")
    return complex(out) if np.ndim(out) == 0 else out


def kernel_entries(n, z, w):
    """Closed-form kernel of Im P_T, vectorized: shape ``(n, n) + broadcast(z, w)``."""
    if n < 1:
        raise ValueError("n must be positive")
    zeta = _zeta(z, w)
    if np.any(zeta.imag <= 0):
        raise ValueError("z and w must lie in the upper half-plane")

    def g(m):
        return -INV_PI / (zeta + 1j * m) ** 2

    out = np.empty((n, n) + zeta.shape, dtype=complex)
    for j in range(1, n):
        for k in range(j, n):
            out[j - 1, k - 1] = out[k - 1, j - 1] = g(j + k - 2) - g(j + k)
        out[j - 1, n - 1] = out[n - 1, j - 1] = kernel_jn(j, n, z, w)
    out[n - 1, n - 1] = g(2 * (n - 1))
    return out


def kernel_PT(n, z, w):
    """Reproducing kernel K(z, w) of the image of P_T."""
    z, w = _point(z), _point(w, "w")
    return KernelMatrix(n, kernel_entries(n, z, w), z, w)


def _oracle_rule(z, w, n_poly=0):
    """Truncated rule for integrands ``t^q e^{it zeta} (...)``: decay y + v,
    cutoff stretched for polynomial growth, one panel per oscillation."""
    zeta = z - w.conjugate()
    decay = zeta.imag
    cutoff = DEFAULT_CUTOFF + 10.0 * n_poly
    panels = max(64, int(math.ceil(cutoff / decay * abs(zeta.real) / (2 * math.pi))))
    return HalfLineRule.truncated(decay, panels=panels, cutoff=cutoff)


def _integrate(integrand, rule, z, w, n_poly=0):
    if rule is not None:
        values = integrand(rule.nodes)
        _check_finite(values)
        return values @ rule.weights
    zeta = z - w.conjugate()
    value, _ = adaptive_halfline(
        integrand, decay=zeta.imag, cutoff=DEFAULT_CUTOFF + 10.0 * n_poly, tol=1e-14,
        start_panels=max(16, int(DEFAULT_CUTOFF / zeta.imag * abs(zeta.real) / (2 * math.pi))))
    return value


def kernel_PT_oracle(n, z, w, rule=None):
    """Entrywise quadrature of (1/pi) int t e^{it(z - conj w)} P_gamma(t) dt.

    The default rule is the adaptive truncated rule in sqrt(t); a
    Gauss-Laguerre rule resolves the t^{3/2} endpoint of the K_jn entries
    only to about 1e-6 relative.
    """
    z, w = _point(z), _point(w, "w")
    zeta = z - w.conjugate()

    def integrand(t):
        m = m_vector(n, t)
        return INV_PI * t * np.exp(1j * zeta * t) * m[:, None, :] * m[None, :, :]

    return KernelMatrix(n, np.asarray(_integrate(integrand, rule, z, w)), z, w)


def phi(t):
    """phi(t) = -1 + sqrt(1 - e^{-2t}), computed without cancellation."""
    t = np.asarray(t, dtype=float)
    e = np.exp(-2.0 * t)
    out = -e / (1.0 + np.sqrt(-np.expm1(-2.0 * t)))
    return float(out) if out.ndim == 0 else out


def phi_m(m, t, y):
    """phi_m(t, y) = sum_{j=1}^m e^{-(j-1)t} ell_{j-1}(2ty); phi_0 = 0."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if m == 0:
        out = np.zeros(np.broadcast(t, y).shape)
    else:
        ell = laguerre_table(m - 1, 2.0 * t * y)
        damp = np.exp(-np.multiply.outer(np.arange(m), t))
        damp = damp.reshape((m,) + t.shape + (1,) * (ell.ndim - 1 - t.ndim))
        out = np.sum(damp * ell, axis=0)
    return float(out) if np.ndim(out) == 0 else out


def kernel_Kgamma(n, z, w, method="quadrature", rule=None, entrywise=False):
    """Scalar kernel K^gamma(z, w) of the image of P.

    ``quadrature`` integrates (1/pi) e^{it(x-u)} t N_n(2ty)^t P_gamma(t) N_n(2tv);
    ``phi-representation`` uses the (phi_n, phi_{n-1}) quadratic form. With
    ``entrywise=True`` (quadrature only) the n x n matrix of K^gamma_jk is
    returned; its sum is K^gamma.
    """
    z, w = _point(z), _point(w, "w")
    x, y, u, v = z.real, z.imag, w.real, w.imag

    if method == "quadrature":
        def integrand(t):
            m = m_vector(n, t)
            a = laguerre_table(n - 1, 2.0 * t * y) * m
            b = laguerre_table(n - 1, 2.0 * t * v) * m
            scale = INV_PI * t * np.exp(1j * (x - u) * t)
            if entrywise:
                return scale * a[:, None, :] * b[None, :, :]
            return scale * np.sum(a, axis=0) * np.sum(b, axis=0)
    elif method == "phi-representation":
        if entrywise:
            raise ValueError("entrywise decomposition is available for quadrature only")

        def integrand(t):
            f = phi(t)
            a = phi_m(n, t, y) + f * phi_m(n - 1, t, y)
            b = phi_m(n, t, v) + f * phi_m(n - 1, t, v)
            return INV_PI * t * np.exp(1j * (x - u) * t) * a * b
    else:
        raise ValueError(f"unknown method {method!r}")

    value = _integrate(integrand, rule, z, w, n_poly=n - 1)
    return np.asarray(value) if entrywise else complex(value)


@dataclass(frozen=True)
class ReproducingResult:
    residual: float
    absolute: float
    value: np.ndarray
    expected: np.ndarray


def reproducing_check(n, a, z, plane_rule=None, halfline_rule=None):
    """Relative residual of int_Pi K(z, w) h(w) dA(w) against h(z) for
    h = build_image_element(n, a).

    When h(z) = 0 (for instance a = 0) the absolute residual is reported in
    both fields.
    """
    from .quadrature import PlaneRule
    from .transforms import build_image_element, build_image_element_grid

    if plane_rule is None:
        plane_rule = PlaneRule()
    z = _point(z)
    u, wu, v, wv = plane_rule.nodes()
    h = build_image_element_grid(n, a, plane_rule, rule=halfline_rule)  # (n, nx, ny)
    kern = kernel_entries(n, z, u[:, None] + 1j * v[None, :])  # (n, n, nx, ny)
    integrand = np.einsum("jkuv,kuv->juv", kern, h)
    value = (integrand @ wv) @ wu
    expected = np.asarray(build_image_element(n, a, z))
    absolute = float(np.linalg.norm(value - expected))
    scale = float(np.linalg.norm(expected))
    residual = absolute / scale if scale > 0 else absolute
    return ReproducingResult(residual, absolute, value, expected)
