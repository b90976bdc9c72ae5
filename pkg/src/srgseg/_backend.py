"""Kernel selection.

The compiled extension is used when it imports; otherwise the pure-Python
kernels are used.  Set ``SRGSEG_PURE_PYTHON=1`` to force the fallback.
"""
import os

from . import _purepy

kernels = _purepy
NAME = "python"

if not os.environ.get("SRGSEG_PURE_PYTHON"):
    try:
        from . import _kernels as kernels  # noqa: F811
    except ImportError:
        kernels = _purepy
    else:
        NAME = "cython"


def available():
    """Mapping of backend name to kernel module for every importable backend."""
    out = {"python": _purepy}
    try:
        from . import _kernels
    except ImportError:
        pass
    else:
        out["cython"] = _kernels
    return out
