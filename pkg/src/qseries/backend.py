"""Kernel backend selection, resolved once at import time.

The compiled Cython kernels are preferred when the extension built; the
pure-numpy twin is the fallback. ``QSERIES_BACKEND`` overrides the choice:
``compiled`` (fail hard if missing), ``python``, or ``auto`` (default).
"""

import os

from . import _kernels_py
from .errors import ConfigError

_requested = os.environ.get("QSERIES_BACKEND", "auto").lower()

if _requested not in ("auto", "python", "compiled"):
    raise ConfigError(
        f"QSERIES_BACKEND must be 'auto', 'python' or 'compiled', got {_requested!r}"
    )

kernels = _kernels_py
name = "python"

if _requested in ("auto", "compiled"):
    try:
        from . import _kernels_cy

        kernels = _kernels_cy
        name = "compiled"
    except ImportError:
        if _requested == "compiled":
            raise ConfigError(
                "QSERIES_BACKEND=compiled but the extension is not built; "
                "run 'pip install -e . --no-build-isolation'"
            ) from None


def backend_name():
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return name
