"""Kernel backend selection.

Prefers the compiled extension, falls back to pure Python.  Set
JOINLAB_KERNEL=python (or =cython) to force a backend; forcing cython when
the extension is missing is an import error rather than a silent fallback.
"""

from __future__ import annotations

import os

_requested = os.environ.get("JOINLAB_KERNEL", "").strip().lower()

if _requested == "python":
    from . import _pyops as _impl
elif _requested == "cython":
    from . import _speedups as _impl  # type: ignore[no-redef]
elif _requested == "":
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _pyops as _impl
else:
    raise ImportError(f"JOINLAB_KERNEL must be 'python' or 'cython', got {_requested!r}")

scale = _impl.scale
axpy = _impl.axpy
pivot_all = _impl.pivot_all


def backend_name() -> str:
    return _impl.BACKEND
