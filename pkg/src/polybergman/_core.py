"""Backend selection for the hot kernels.

The compiled extension is used when it imports; otherwise the numpy
fallback. Setting ``POLYBERGMAN_PURE=1`` forces the fallback.
"""

import os

from . import _pure

BACKEND = "pure"

if os.environ.get("POLYBERGMAN_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ext as _impl
        BACKEND = "ext"
    except ImportError:  # extension not built
        _impl = _pure
else:
    _impl = _pure

loggamma = _impl.loggamma
digamma = _impl.digamma
laguerre_table = _impl.laguerre_table


def backends():
    """Map of available backend names to modules (for tests and benchmarks)."""
    out = {"pure": _pure}
    try:
        from . import _ext
        out["ext"] = _ext
    except ImportError:
        pass
    return out
