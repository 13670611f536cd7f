"""Kernel backend selection.

The compiled extension is used when it was built; otherwise, or when
``ECOPLAN_PURE_PYTHON=1`` is set, the pure-Python implementation is used.
"""

import os

from . import _kernels_py

if os.environ.get("ECOPLAN_PURE_PYTHON", "") not in ("", "0"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _impl = _kernels_py

BACKEND = "compiled" if _impl is not _kernels_py else "python"

edge_cost = _impl.edge_cost
edge_row = _impl.edge_row
dp_sweep = _impl.dp_sweep


def compiled_module():
    """The compiled kernel module, or None if it is unavailable."""
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        return None
    return _kernels
