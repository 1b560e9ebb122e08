"""Select the kernel implementation at import time.

The compiled extension is preferred. Setting ``VIBSHOCK_PURE_PYTHON=1`` forces
the numpy fallback, which is also used when the extension was not built.
"""
import os

from . import _kernels_py

if os.environ.get("VIBSHOCK_PURE_PYTHON", "") not in ("", "0"):
    kernels = _kernels_py
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _kernels_py

BACKEND = kernels.NAME


def available():
    """Names of the kernel modules importable in this environment."""
    names = ["python"]
    try:
        from . import _kernels  # noqa: F401
    except ImportError:
        pass
    else:
        names.insert(0, "cython")
    return names


def load(name):
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _kernels
        return _kernels
    raise ValueError(f"unknown kernel backend {name!r}")
