"""Exception hierarchy shared by all modules."""


class PolyBergmanError(Exception):
    """Base class for errors raised by this package."""


class PoleError(PolyBergmanError, ValueError):
    """Argument sits on a pole (nonpositive integer for Gamma/digamma)."""


class DomainError(PolyBergmanError, ValueError):
    """Argument outside the domain of the function (e.g. Re p <= 0)."""


class NonFiniteSampleError(PolyBergmanError, FloatingPointError):
    """A quadrature integrand returned NaN or infinity at a node."""


class InvalidIntervalError(PolyBergmanError, ValueError):
    """Indicator interval with c >= d or negative left end."""


class IndexOutOfRangeError(PolyBergmanError, IndexError):
    """Index outside 1..n."""


class CertificationError(PolyBergmanError):
    """Generic-position certificate failed at some grid point."""

    def __init__(self, message, x=None, k=None):
        super().__init__(message)
        self.x = x
        self.k = k


class MissingEndpointError(PolyBergmanError, ValueError):
    """A sampled function lacks its value at 0 or at infinity."""


class AlphabetError(PolyBergmanError, ValueError):
    """Word letter not valid for the requested alphabet/dimension."""


class NotSeparableError(PolyBergmanError):
    """No separating word found within the length budget."""

    def __init__(self, message, best_gap=0.0, best_word=None):
        super().__init__(message)
        self.best_gap = best_gap
        self.best_word = best_word
