"""Kernel backend selection.

The compiled extension is used when it was built; setting
``CONELAT_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("CONELAT_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # extension not built
        pass

perm_group_census = _impl.perm_group_census
orbit_census = _impl.orbit_census


def get_backend(name: str):
    """Return the kernel module for ``'python'`` or ``'cython'``."""
    if name == "python":
        return _kernels_py
    if name == "cython":
        from . import _ckernels

        return _ckernels
    raise ValueError(f"unknown kernel backend {name!r}")
