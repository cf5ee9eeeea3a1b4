"""Backend selection for the counting kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when ``FQRANK_PURE_PYTHON`` is set to a non-empty value, the numpy fallback
in ``_pykernels`` is used. Both give identical counts.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("FQRANK_PURE_PYTHON"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
count_values = _impl.count_values
count_range = _impl.count_range


def available_backends() -> dict:
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["cython"] = _ckernels
    return out
