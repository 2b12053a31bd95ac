"""Kernel backend selection.

Prefers the compiled extension; falls back to the pure-Python twin when the
extension is missing or OPTSEG_PURE_PYTHON is set to a non-empty value.
"""

import os

from . import _kernels_py

if os.environ.get("OPTSEG_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND: str = _impl.BACKEND

greedy_ids = _impl.greedy_ids
optimal_ids = _impl.optimal_ids

# introspection path is python-only by design
dp_arrays = _kernels_py.dp_arrays
