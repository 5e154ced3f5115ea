"""Kernel backend selection.

Prefers the compiled extension and falls back to the pure numpy kernels.
Set ``SLA_SELECT_PURE=1`` to force the fallback (used by the parity tests
and the backend benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("SLA_SELECT_PURE") == "1":
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

dp_max_kernel = _impl.dp_max_kernel
dp_min_kernel = _impl.dp_min_kernel
bnb_max_kernel = _impl.bnb_max_kernel
bnb_min_kernel = _impl.bnb_min_kernel


def backend_name() -> str:
    """Name of the active kernel backend: "compiled" or "pure"."""
    return _impl.BACKEND_NAME
