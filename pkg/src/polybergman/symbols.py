"""Vertical symbols a(Im z) with declared boundary limits."""

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import InvalidIntervalError


@dataclass(frozen=True)
class VerticalSymbol:
    """A bounded function of y = Im z with limits at 0+ and +infinity.

    ``breakpoints`` lists the jumps of a piecewise-continuous symbol; the
    quadrature oracles split their panels there.
    """

    evaluate: Callable[[np.ndarray], np.ndarray]
    limit_at_zero: float
    limit_at_infinity: float
    closed_form: tuple | None = None
    breakpoints: tuple = ()
    value_range: tuple = (0.0, 1.0)
    label: str = field(default="general", compare=False)

    def __call__(self, y):
        return self.evaluate(np.asarray(y, dtype=float))

    @property
    def is_indicator(self):
        return self.closed_form is not None and self.closed_form[0] == "indicator"


def make_indicator(c, d):
    """Indicator of the half-open interval [c, d); ``d`` may be ``inf``.

    A closed right endpoint differs only on a null set, so ``[0, alpha/2]``
    is represented as ``[0, alpha/2)``.
    """
    c = float(c)
    d = float(d)
    if c < 0 or not c < d:
        raise InvalidIntervalError(f"need 0 <= c < d, got [{c}, {d})")

    def evaluate(y):
        return ((y >= c) & (y < d)).astype(float)

    breaks = tuple(b for b in (c, d) if 0.0 < b < np.inf)
    lo = 1.0 if (c == 0.0 and d == np.inf) else 0.0
    return VerticalSymbol(
        evaluate,
        limit_at_zero=1.0 if c == 0.0 else 0.0,
        limit_at_infinity=1.0 if d == np.inf else 0.0,
        closed_form=("indicator", c, d),
        breakpoints=breaks,
        value_range=(lo, 1.0),
        label=f"indicator:{c:g}:{d:g}",
    )


def make_constant(value):
    value = float(value)

    def evaluate(y):
        return np.full(np.shape(y), value)

    return VerticalSymbol(evaluate, value, value, closed_form=("const", value),
                          value_range=(value, value), label=f"const:{value:g}")


def a0_symbol(alpha):
    """The symbol chi_[0, alpha/2](y) generating the D_n algebra."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return make_indicator(0.0, 0.5 * alpha)


@dataclass(frozen=True)
class CanonicalFamily:
    n: int
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def __getitem__(self, k):
        return self.members[k]

    def total(self, y):
        return sum(m(y) for m in self.members)


def canonical_family(n):
    """a_k = chi_[k-1, k) for k < n and a_n = chi_[n-1, inf)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    members = [make_indicator(k - 1, k) for k in range(1, n)]
    members.append(make_indicator(n - 1, np.inf))
    return CanonicalFamily(n, tuple(members))


def limits(a):
    """Return ``(a^0, a^inf)``."""
    return a.limit_at_zero, a.limit_at_infinity


def parse_symbol(spec):
    """Parse ``indicator:c:d`` (``d`` may be ``inf``) or ``const:c``."""
    parts = spec.strip().split(":")
    try:
        if parts[0] == "indicator" and len(parts) == 3:
            return make_indicator(float(parts[1]), float(parts[2]))
        if parts[0] == "const" and len(parts) == 2:
            return make_constant(float(parts[1]))
    except ValueError as exc:
        raise ValueError(f"bad symbol spec {spec!r}: {exc}") from exc
    raise ValueError(f"bad symbol spec {spec!r}; expected indicator:c:d or const:c")
