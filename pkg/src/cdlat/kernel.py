"""Scan kernel selection.

The compiled ``cdlat._kernel`` extension is used when it imports; otherwise
the pure-Python ``cdlat._kernel_py`` takes over.  Set ``CDLAT_KERNEL=python``
to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernel_py

if os.environ.get("CDLAT_KERNEL", "").lower() == "python":
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernel_py

IMPLEMENTATION: str = _impl.IMPLEMENTATION
scan_pattern = _impl.scan_pattern
batch_measure = _impl.batch_measure

IMPLEMENTATIONS = {"python": _kernel_py}
if _impl is not _kernel_py:
    IMPLEMENTATIONS[_impl.IMPLEMENTATION] = _impl


def form_tensor(pres) -> np.ndarray:
    """(d, e, d) array with entry [i, w, j] = comm[i][j][w]."""
    d, e = pres.v_dim, pres.w_dim
    out = np.zeros((d, e, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            for w, x in enumerate(pres.comm[i][j]):
                out[i, w, j] = x
    return out
