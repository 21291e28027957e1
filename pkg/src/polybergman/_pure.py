"""Pure numpy implementations of the hot kernels.

These are the reference versions of the routines in ``_ext.pyx``; both
expose the same three functions and are selected by ``polybergman._core``.
Poles and out-of-domain points produce ``nan`` here; the public wrappers in
``specfun`` turn those into exceptions.
"""

import numpy as np

# Lanczos approximation, g = 7, nine coefficients.
LANCZOS_G = 7.0
LANCZOS_COEF = np.array([
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
])

# B_2k / (2k) for k = 1..7 (B_2 .. B_14).
DIGAMMA_ASYMPTOTIC = np.array([
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
])

DIGAMMA_SHIFT = 10.0  # first omitted term ~ 0.44 / 10**16
HALF_LOG_2PI = 0.91893853320467274178


def _is_pole(z):
    return (z.imag == 0.0) & (z.real <= 0.0) & (z.real == np.round(z.real))


def _loggamma_right(z):
    """log Gamma for Re z >= 1/2 (Lanczos series)."""
    zm = z - 1.0
    acc = np.full(z.shape, LANCZOS_COEF[0], dtype=complex)
    for i in range(1, LANCZOS_COEF.size):
        acc = acc + LANCZOS_COEF[i] / (zm + i)
    t = zm + LANCZOS_G + 0.5
    return HALF_LOG_2PI + (zm + 0.5) * np.log(t) - t + np.log(acc)


def loggamma(z):
    """Complex log Gamma on an array; ``nan`` at the poles.

    The branch is not the principal one of ``log Gamma``; only ``exp`` of the
    result (and differences of results) is meaningful.
    """
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    left = z.real < 0.5
    right = ~left
    if np.any(right):
        out[right] = _loggamma_right(z[right])
    if np.any(left):
        zl = z[left]
        with np.errstate(all="ignore"):
            out[left] = (np.log(np.pi) - np.log(np.sin(np.pi * zl))
                         - _loggamma_right(1.0 - zl))
    out[_is_pole(z)] = np.nan
    return out


def _digamma_right(z):
    acc = np.zeros(z.shape, dtype=complex)
    z = z.copy()
    # at most ceil(DIGAMMA_SHIFT) + 1 passes since Re z >= 1/2 here
    for _ in range(int(DIGAMMA_SHIFT) + 1):
        small = z.real < DIGAMMA_SHIFT
        if not np.any(small):
            break
        acc[small] -= 1.0 / z[small]
        z[small] += 1.0
    inv2 = 1.0 / (z * z)
    series = np.zeros(z.shape, dtype=complex)
    for c in DIGAMMA_ASYMPTOTIC[::-1]:
        series = (series + c) * inv2
    return acc + np.log(z) - 0.5 / z - series


def digamma(z):
    """Complex digamma on an array; ``nan`` at the poles."""
    z = np.asarray(z, dtype=complex)
    out = np.empty(z.shape, dtype=complex)
    left = z.real < 0.5
    right = ~left
    if np.any(right):
        out[right] = _digamma_right(z[right])
    if np.any(left):
        zl = z[left]
        with np.errstate(all="ignore"):
            out[left] = _digamma_right(1.0 - zl) - np.pi / np.tan(np.pi * zl)
    out[_is_pole(z)] = np.nan
    return out


def laguerre_table(kmax, y):
    """Normalized Laguerre functions ell_0..ell_kmax at ``y``.

    Returns an array of shape ``(kmax + 1,) + y.shape``; negative ``y`` maps
    to zero (the functions carry the indicator of the half-line).
    """
    y = np.asarray(y, dtype=float)
    out = np.empty((kmax + 1,) + y.shape)
    prev = np.zeros(y.shape)
    cur = np.ones(y.shape)
    out[0] = cur
    for k in range(kmax):
        nxt = ((2 * k + 1 - y) * cur - k * prev) / (k + 1)
        prev, cur = cur, nxt
        out[k + 1] = cur
    damp = np.where(y >= 0.0, np.exp(-0.5 * np.maximum(y, 0.0)), 0.0)
    sign = np.where(np.arange(kmax + 1) % 2 == 0, 1.0, -1.0)
    out *= damp
    out *= sign.reshape((-1,) + (1,) * y.ndim)
    return out
