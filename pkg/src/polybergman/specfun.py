"""Special functions used by the closed-form kernels.

Every function accepts a scalar or an array. Scalars come back as Python
``complex`` (or ``float`` for the Laguerre functions); arrays keep their
shape. Complex arguments are supported throughout because the kernel
entries need J and beta at p = -i(z - conj(w)) + const.
"""

import math

import numpy as np

from . import _core
from .errors import DomainError, PoleError

EULER_GAMMA = 0.57721566490153286061
SQRT_PI = math.sqrt(math.pi)
LOG_GAMMA_3_2 = math.lgamma(1.5)


def _as_complex(z):
    arr = np.asarray(z, dtype=complex)
    return arr, arr.ndim == 0


def _finish(out, scalar):
    if scalar:
        return complex(out.reshape(()))
    return out


def _check_poles(z, name):
    bad = (z.imag == 0.0) & (z.real <= 0.0) & (z.real == np.round(z.real))
    if np.any(bad):
        raise PoleError(f"{name} has a pole at {z[bad].ravel()[0].real:g}")


def _check_right_half(z, name):
    if np.any(z.real <= 0.0):
        raise DomainError(f"{name} requires Re z > 0, got {z[z.real <= 0.0].ravel()[0]}")


def loggamma(z):
    """log Gamma(z), up to multiples of 2*pi*i in the imaginary part."""
    z, scalar = _as_complex(z)
    _check_poles(z, "loggamma")
    return _finish(_core.loggamma(z), scalar)


def gamma_fn(z):
    """Gamma function via the Lanczos approximation (g = 7) with reflection.

    Raises
    ------
    PoleError
        If any argument is a nonpositive integer.
    """
    z, scalar = _as_complex(z)
    _check_poles(z, "gamma")
    return _finish(np.exp(_core.loggamma(z)), scalar)


def beta_fn(a, b):
    """Euler Beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    scalar = a.ndim == 0 and b.ndim == 0
    _check_poles(a, "beta")
    _check_poles(b, "beta")
    out = np.exp(_core.loggamma(a) + _core.loggamma(b) - _core.loggamma(a + b))
    return _finish(out, scalar)


def digamma(z):
    """Digamma psi(z) = Gamma'(z) / Gamma(z).

    Upward recurrence until Re z >= 10, then the asymptotic series through
    B_14; reflection for Re z < 1/2.
    """
    z, scalar = _as_complex(z)
    _check_poles(z, "digamma")
    return _finish(_core.digamma(z), scalar)


def harmonic(z):
    """Harmonic function H(z) = psi(z + 1) + Euler's constant."""
    z, scalar = _as_complex(z)
    _check_poles(z + 1.0, "harmonic")
    return _finish(_core.digamma(z + 1.0) + EULER_GAMMA, scalar)


def nielsen_beta(z):
    """Nielsen's beta function, (psi((z+1)/2) - psi(z/2)) / 2 for Re z > 0."""
    z, scalar = _as_complex(z)
    _check_right_half(z, "nielsen_beta")
    out = 0.5 * (_core.digamma(0.5 * (z + 1.0)) - _core.digamma(0.5 * z))
    return _finish(out, scalar)


def nielsen_beta_series(z, terms=200_000):
    """Alternating series sum (-1)^n / (z + n), averaged over the last two
    partial sums. Slow; kept as an independent check of ``nielsen_beta``."""
    z = complex(z)
    if z.real <= 0:
        raise DomainError("nielsen_beta_series requires Re z > 0")
    n = np.arange(terms)
    terms_ = np.where(n % 2 == 0, 1.0, -1.0) / (z + n)
    partial = np.sum(terms_)
    # averaging consecutive partial sums kills the leading O(1/N) error
    return complex(partial - 0.5 * terms_[-1])


def laplace_J(p):
    """J(p) = int_0^inf exp(-p t) sqrt(1 - exp(-2t)) dt = B(p/2, 3/2) / 2."""
    p, scalar = _as_complex(p)
    _check_right_half(p, "laplace_J")
    out = 0.5 * np.exp(_core.loggamma(0.5 * p) + LOG_GAMMA_3_2
                       - _core.loggamma(0.5 * p + 1.5))
    return _finish(out, scalar)


def laplace_tJ(p):
    """Laplace transform of t*sqrt(1 - exp(-2t)), i.e. -dJ/dp.

    Evaluated as J(p) * (psi(p/2 + 3/2) - psi(p/2)) / 2, the log-derivative
    form; ``kernels`` uses the equivalent J * (beta(p) + 1/(p+1)) so the two
    code paths check each other.
    """
    p, scalar = _as_complex(p)
    _check_right_half(p, "laplace_tJ")
    j = 0.5 * np.exp(_core.loggamma(0.5 * p) + LOG_GAMMA_3_2
                     - _core.loggamma(0.5 * p + 1.5))
    out = j * 0.5 * (_core.digamma(0.5 * p + 1.5) - _core.digamma(0.5 * p))
    return _finish(out, scalar)


def laguerre_ell(k, y):
    """Normalized Laguerre function (-1)^k exp(-y/2) L_k(y).

    Parameters
    ----------
    k : int
        Degree, k >= 0.
    y : float or array_like
        Points on the half-line; negative values give 0.
    """
    if k < 0:
        raise DomainError("Laguerre degree must be nonnegative")
    y_arr = np.asarray(y, dtype=float)
    out = _core.laguerre_table(int(k), y_arr)[k]
    if y_arr.ndim == 0:
        return float(out)
    return out


def laguerre_table(kmax, y):
    """All of ell_0 .. ell_kmax at ``y``, shape ``(kmax + 1,) + y.shape``."""
    if kmax < 0:
        raise DomainError("Laguerre degree must be nonnegative")
    return _core.laguerre_table(int(kmax), np.asarray(y, dtype=float))


def laguerre_poly_coefficients(k):
    """Power-series coefficients c_i of the standard polynomial L_k,
    L_k(y) = sum_i c_i y^i, as exact integers over factorials (floats)."""
    return np.array([(-1) ** i * math.comb(k, i) / math.factorial(i)
                     for i in range(k + 1)])
