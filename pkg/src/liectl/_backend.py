"""Pick the kernel implementation at import time.

The compiled ``_kernels`` extension is used when it was built; otherwise, or
when ``LIECTL_PURE_PYTHON`` is set to a non-empty value, the numpy fallback
in ``_kernels_py`` is used.
"""
import os

from . import _kernels_py

if os.environ.get("LIECTL_PURE_PYTHON"):
    kernels = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _kernels_py
        BACKEND = "python"
    else:
        BACKEND = "cython"


def available_backends():
    """Map backend name to kernel module for every backend importable here."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        found["cython"] = _kernels
    return found
