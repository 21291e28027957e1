import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from polybergman.errors import CertificationError, IndexOutOfRangeError
from polybergman.projections import (generic_position_certificate, m_vector, p_gamma,
                                     q_projection)
from polybergman.spectral import CompactifiedGrid


def test_m_vector_value():
    m = m_vector(2, 1.0)
    assert np.allclose(m, [math.sqrt(1 - math.exp(-2)), math.exp(-1)], atol=1e-15)


def test_endpoint_values_exact():
    for n in range(2, 9):
        e = np.eye(n)
        assert np.array_equal(p_gamma(n, 0.0).entries, np.outer(e[-1], e[-1]))
        assert np.array_equal(p_gamma(n, math.inf).entries, np.outer(e[0], e[0]))


@given(st.integers(min_value=1, max_value=8), st.floats(min_value=1e-3, max_value=1e3))
def test_rank_one_projection(n, x):
    p = p_gamma(n, x)
    assert p.idempotency_defect() < 1e-12
    assert p.symmetry_defect() < 1e-12
    assert p.rank() == 1
    assert abs(np.trace(p.entries) - 1) < 1e-12


def test_q_projection():
    q = q_projection(2, 3)
    assert q.entries[1, 1] == 1 and q.entries.sum() == 1
    with pytest.raises(IndexOutOfRangeError):
        q_projection(4, 3)


def test_certificate_passes_on_log_grid():
    report = generic_position_certificate(5, CompactifiedGrid.log(0.01, 100.0, 120))
    assert report.passed
    assert report.max_norm_defect < 1e-12
    # smallest gamma^{a_5} is at the right end: log = -2 (n - 1) x
    assert report.min_log_margin[5] == (100.0, -800.0)
    assert len(report.rows) == 5 * 120


def test_certificate_log_margins_finite_far_out():
    report = generic_position_certificate(3, np.array([500.0]))
    assert all(np.isfinite(lm) for _, _, lm in report.rows)


def test_certificate_rejects_bad_points():
    with pytest.raises(ValueError):
        generic_position_certificate(3, np.array([0.0, 1.0]))


def test_certificate_error_carries_location(monkeypatch):
    from polybergman import projections

    def broken(n, x):
        logs = np.zeros((n, np.size(x)))
        logs[1, 0] = -np.inf
        return logs

    monkeypatch.setattr(projections, "log_m_vector", broken)
    with pytest.raises(CertificationError) as info:
        generic_position_certificate(3, np.array([0.5, 1.0]))
    assert info.value.k == 2 and info.value.x == 0.5
