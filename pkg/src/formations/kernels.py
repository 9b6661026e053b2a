"""Kernel selection: compiled closure if the extension built, else pure Python.

FORMATIONS_PURE=1 forces the pure backend (used by tests and the benchmark
to compare both implementations on one interpreter).
"""

import os

from . import _closure_py

if os.environ.get("FORMATIONS_PURE"):
    _impl = _closure_py
    BACKEND = "python"
else:
    try:
        from . import _closure as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _closure_py
        BACKEND = "python"

closure_packed = _impl.closure_packed


def pure_closure_packed(table, gens) -> bytes:
    """Always the pure-Python kernel, regardless of the selected backend."""
    return _closure_py.closure_packed(table, gens)
