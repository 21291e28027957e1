"""Spectral functions of Toeplitz operators with vertical symbols.

For a vertical symbol ``a`` the Toeplitz operator on the true-poly-Bergman
space of order n is unitarily equivalent to multiplication by

    gamma^{(n),a}(x) = int_0^inf a(y / 2x) ell_{n-1}(y)^2 dy,

and on the poly-Bergman space by the matrix function with entries
``int a(y / 2x) ell_{j-1}(y) ell_{k-1}(y) dy``. Indicator symbols have closed
forms (canonical family, and chi_[0, alpha/2] through incomplete gamma
integrals).
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaincc

from .errors import IndexOutOfRangeError
from .quadrature import adaptive_halfline
from .specfun import laguerre_poly_coefficients, laguerre_table

N_CAP = 16


@dataclass(frozen=True)
class SpectralMatrix:
    n: int
    x: float
    entries: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


@dataclass(frozen=True)
class CompactifiedGrid:
    """Sample points of [0, inf]: a positive increasing interior plus flags
    for the two endpoints."""

    interior: np.ndarray
    includes_zero: bool = True
    includes_infinity: bool = True

    def __post_init__(self):
        interior = np.asarray(self.interior, dtype=float).ravel()
        if interior.size == 0:
            raise ValueError("grid interior must be nonempty")
        if np.any(~np.isfinite(interior)) or np.any(interior <= 0.0):
            raise ValueError("grid interior must be finite and positive")
        if np.any(np.diff(interior) <= 0.0):
            raise ValueError("grid interior must be strictly increasing")
        object.__setattr__(self, "interior", interior)

    @classmethod
    def log(cls, lo, hi, count, **kw):
        return cls(np.geomspace(lo, hi, count), **kw)

    @classmethod
    def parse(cls, spec, **kw):
        """``log:lo:hi:count`` or ``lin:lo:hi:count``."""
        try:
            kind, lo, hi, count = spec.split(":")
            lo, hi, count = float(lo), float(hi), int(count)
        except ValueError as exc:
            raise ValueError(f"bad grid spec {spec!r}") from exc
        if kind == "log":
            return cls(np.geomspace(lo, hi, count), **kw)
        if kind == "lin":
            return cls(np.linspace(lo, hi, count), **kw)
        raise ValueError(f"bad grid kind {kind!r}")

    def points(self):
        """All sample points in order, endpoints as 0.0 and inf."""
        pts = [self.interior]
        if self.includes_zero:
            pts.insert(0, np.array([0.0]))
        if self.includes_infinity:
            pts.append(np.array([np.inf]))
        return np.concatenate(pts)


def _check_n(n):
    if not 1 <= n <= N_CAP:
        raise ValueError(f"n must be in 1..{N_CAP}, got {n}")


def _laguerre_cutoff(k):
    """Point beyond which ell_k(y)^2 integrates to below ~1e-18."""
    # ell_k(y)^2 <= exp(-y) (y^k / k!)^2 * C past the last zero (~4k + 2)
    y = 45.0 + 4.0 * k
    while -y + 2 * k * math.log(y) - 2 * math.lgamma(k + 1) > -45.0:
        y += 5.0
    return y


def _symbol_integral(a, x, weight, kmax):
    """int_0^inf a(y/2x) weight(y) dy with the jumps of ``a`` as panel edges."""
    cutoff = _laguerre_cutoff(kmax)
    breaks = tuple(2.0 * x * b for b in a.breakpoints)
    value, _ = adaptive_halfline(
        lambda y: a(y / (2.0 * x)) * weight(y),
        decay=1.0, breakpoints=breaks, cutoff=cutoff, tol=1e-14,
    )
    return value


def gamma_true(n, a, x):
    """Scalar spectral function gamma^{(n),a}(x) by quadrature (x > 0)."""
    _check_n(n)
    if not x > 0:
        raise ValueError("x must be positive")

    if a.closed_form is not None and a.closed_form[0] == "const":
        return float(a.closed_form[1])  # orthonormality of ell_{n-1}

    def weight(y):
        return laguerre_table(n - 1, y)[n - 1] ** 2

    return float(np.real(_symbol_integral(a, x, weight, n - 1)))


def gamma_matrix(n, a, x):
    """Matrix spectral function gamma^{n,a}(x) by quadrature (x > 0)."""
    _check_n(n)
    if not x > 0:
        raise ValueError("x must be positive")

    if a.closed_form is not None and a.closed_form[0] == "const":
        return SpectralMatrix(n, float(x), float(a.closed_form[1]) * np.eye(n))

    def weight(y):
        table = laguerre_table(n - 1, y)
        return table[:, None, :] * table[None, :, :]

    entries = np.real(_symbol_integral(a, x, weight, n - 1))
    entries = 0.5 * (entries + entries.T)
    return SpectralMatrix(n, float(x), entries)


def gamma_indicator_closed(k, n, x):
    """gamma^{a_k}(x) for the canonical family a_1..a_n.

    e^{-2kx}(e^{2x} - 1) for k < n and e^{-2(n-1)x} for k = n; accepts
    arrays of x and the endpoints 0 and inf.
    """
    return np.exp(log_gamma_indicator_closed(k, n, x))


def log_gamma_indicator_closed(k, n, x):
    """Natural log of ``gamma_indicator_closed``; stays finite for large x."""
    if not 1 <= k <= n:
        raise IndexOutOfRangeError(f"k must be in 1..{n}, got {k}")
    x = np.asarray(x, dtype=float)
    finite = np.where(np.isinf(x), 0.0, x)
    with np.errstate(divide="ignore"):
        if k == n:
            out = -2.0 * (n - 1) * finite
            if n > 1:
                out = np.where(np.isinf(x), -np.inf, out)
        else:
            out = np.log(-np.expm1(-2.0 * x)) - 2.0 * (k - 1) * finite
            if k > 1:
                out = np.where(np.isinf(x), -np.inf, out)
    if out.ndim == 0:
        return float(out)
    return out


def _ell_product_coefficients(j, k):
    """Coefficients of e^{y} ell_j(y) ell_k(y) as a polynomial in y."""
    cj = laguerre_poly_coefficients(j)
    ck = laguerre_poly_coefficients(k)
    return (-1) ** (j + k) * np.convolve(cj, ck)


def _incomplete_entry(j, k, s):
    """int_0^s ell_j ell_k dy via int_0^s y^i e^{-y} dy = i! P(i + 1, s).

    Past the oscillatory bulk (s > 2(j + k) + 2) the complementary form
    delta_jk - sum c_i i! Q(i + 1, s) is used; its terms are tiny, so it
    does not cancel.
    """
    c = _ell_product_coefficients(j, k)
    i = np.arange(c.size)
    fact = np.array([math.factorial(m) for m in i], dtype=float)
    s = np.asarray(s, dtype=float)
    flat = s.ravel()[None, :]
    upper = flat > 2.0 * (j + k) + 2.0
    lower_p = gammainc(i[:, None] + 1.0, flat)
    upper_q = gammaincc(i[:, None] + 1.0, flat)
    weights = c * fact
    vals = np.where(upper[0], float(j == k) - weights @ upper_q, weights @ lower_p)
    # cancellation estimate: sum |c_i| i! (times the relevant P or Q) relative to double eps
    mags = np.where(upper, upper_q, lower_p)
    cond = float(np.max(np.abs(weights) @ mags)) * 2.2e-16
    return vals.reshape(s.shape), cond


def _quadrature_entry(j, k, s):
    out = []
    for si in np.atleast_1d(s).ravel():
        if np.isinf(si):
            out.append(1.0 if j == k else 0.0)
            continue
        def integrand(y, si=si):
            table = laguerre_table(max(j, k), y)
            return np.where(y < si, table[j] * table[k], 0.0)

        val, _ = adaptive_halfline(
            integrand,
            decay=1.0, breakpoints=(si,), cutoff=min(si, _laguerre_cutoff(max(j, k))) + 1.0,
            tol=1e-14)
        out.append(float(np.real(val)))
    return np.array(out).reshape(np.shape(s))


def gamma_a0_matrix(n, alpha, x):
    """gamma^{n,a_0}(x) = int_0^{alpha x} N_n N_n^t dy for a_0 = chi_[0, alpha/2].

    Entries come from the incomplete-gamma expansion of the Laguerre
    products; when that sum would lose more than ~1e-11 to cancellation
    (large n), the entry is integrated numerically instead. ``x`` may be 0
    or inf, giving the zero and identity matrices.
    """
    _check_n(n)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    x = float(x)
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0.0:
        return SpectralMatrix(n, x, np.zeros((n, n)))
    if np.isinf(x):
        return SpectralMatrix(n, x, np.eye(n))
    s = alpha * x
    out = np.empty((n, n))
    for j in range(n):
        for k in range(j, n):
            val, cond = _incomplete_entry(j, k, s)
            if cond > 1e-11:
                val = _quadrature_entry(j, k, s)
            out[j, k] = out[k, j] = float(val)
    return SpectralMatrix(n, x, out)


def boundary_limits(n, a):
    """``(a^inf I, a^0 I)``: the limits of gamma^{n,a} as x -> 0+ and x -> inf."""
    _check_n(n)
    return a.limit_at_infinity * np.eye(n), a.limit_at_zero * np.eye(n)


def gamma_matrix_sampled(n, a, grid):
    """gamma^{n,a} on a compactified grid, endpoints filled from the limits.

    Returns an array of shape ``(len(grid.points()), n, n)``.
    """
    at_zero, at_inf = boundary_limits(n, a)
    values = []
    for x in grid.points():
        if x == 0.0:
            values.append(at_zero)
        elif np.isinf(x):
            values.append(at_inf)
        else:
            values.append(gamma_matrix(n, a, x).entries)
    return np.array(values)
