"""The all-but-one generic-position projection system P_gamma, Q_1..Q_n.

``M_n(x)`` is the unit vector of square roots of the canonical-family
spectral functions; ``P_gamma = M_n M_n^t`` is a rank-one projection at
every point of [0, inf] and the ``Q_j`` are the coordinate projections.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CertificationError, IndexOutOfRangeError
from .spectral import CompactifiedGrid, log_gamma_indicator_closed

UNIT_TOL = 1e-12


@dataclass(frozen=True)
class ProjectionMatrix:
    n: int
    entries: np.ndarray

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)

    def idempotency_defect(self):
        p = self.entries
        return float(np.linalg.norm(p @ p - p))

    def symmetry_defect(self):
        return float(np.linalg.norm(self.entries - self.entries.conj().T))

    def rank(self):
        return int(round(float(np.trace(self.entries).real)))


def log_m_vector(n, x):
    """Componentwise log of M_n(x): 0.5 * log gamma^{a_k}(x), k = 1..n."""
    return 0.5 * np.array([log_gamma_indicator_closed(k, n, x) for k in range(1, n + 1)])


def m_vector(n, x):
    """M_n(x) = (sqrt(gamma^{a_1}(x)), ..., sqrt(gamma^{a_n}(x))).

    ``x`` may be a scalar (including 0 and inf) or an array, in which case
    the result has shape ``(n,) + x.shape``. M_n(0) = e_n, M_n(inf) = e_1.
    """
    if n < 1:
        raise ValueError("n must be positive")
    return np.exp(log_m_vector(n, x))


def p_gamma(n, x):
    """P_gamma(x) = M_n(x) M_n(x)^t; exactly E_nn at 0 and E_11 at inf."""
    x = float(x)
    if x < 0:
        raise ValueError("x must lie in [0, inf]")
    m = m_vector(n, x)
    return ProjectionMatrix(n, np.outer(m, m))


def q_projection(j, n):
    """Coordinate projection Q_j = E_jj (1-based j)."""
    if not 1 <= j <= n:
        raise IndexOutOfRangeError(f"j must be in 1..{n}, got {j}")
    q = np.zeros((n, n))
    q[j - 1, j - 1] = 1.0
    return ProjectionMatrix(n, q)


@dataclass
class CertificateReport:
    n: int
    rows: list = field(default_factory=list)  # (x, k, log_margin)
    min_log_margin: dict = field(default_factory=dict)  # k -> (x, log margin)
    max_norm_defect: float = 0.0
    passed: bool = True

    def as_csv_rows(self):
        return [(x, k, lm) for x, k, lm in self.rows]


def generic_position_certificate(n, grid):
    """Check strict positivity of every gamma^{a_k} and ||M_n|| = 1 on the
    interior of ``grid``.

    Positivity is judged in log space, so margins like e^{-400} are still
    reported as finite numbers. Raises ``CertificationError`` naming the
    offending ``(x, k)`` on failure.
    """
    if isinstance(grid, CompactifiedGrid):
        xs = grid.interior
    else:
        xs = np.asarray(grid, dtype=float).ravel()
        if np.any(~(xs > 0)) or np.any(~np.isfinite(xs)):
            raise ValueError("grid interior must contain only finite positive points")
    report = CertificateReport(n)
    logs = log_m_vector(n, xs) * 2.0  # log gamma^{a_k}(x), shape (n, len)
    for k in range(1, n + 1):
        row = np.atleast_1d(logs[k - 1])
        for x, lm in zip(xs, row):
            report.rows.append((float(x), k, float(lm)))
            if not np.isfinite(lm):
                report.passed = False
                raise CertificationError(
                    f"gamma^a_{k}({x:g}) is not strictly positive", x=float(x), k=k)
        i = int(np.argmin(row))
        report.min_log_margin[k] = (float(xs[i]), float(row[i]))
    norms = np.sqrt(np.sum(np.exp(logs), axis=0))
    report.max_norm_defect = float(np.max(np.abs(norms - 1.0)))
    if report.max_norm_defect > UNIT_TOL:
        report.passed = False
        bad = float(np.atleast_1d(xs)[int(np.argmax(np.abs(norms - 1.0)))])
        raise CertificationError(f"||M_n({bad:g})|| deviates from 1", x=bad)
    return report
