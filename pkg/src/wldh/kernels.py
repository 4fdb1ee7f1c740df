"""Backend selection for the refinement kernels.

The compiled extension is used when it imports; setting ``WLDH_PURE_PYTHON=1``
forces the numpy fallback. Both backends produce bit-identical arrays.
"""
from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("WLDH_PURE_PYTHON") == "1":
        raise ImportError("compiled kernels disabled by WLDH_PURE_PYTHON")
    from . import _ckernels as _compiled
except ImportError:
    _compiled = None

BACKENDS = {"python": _pykernels}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

BACKEND = "compiled" if _compiled is not None else "python"
_active = BACKENDS[BACKEND]


def use_backend(name: str) -> None:
    """Switch the process-wide backend (``"compiled"`` or ``"python"``)."""
    global BACKEND, _active
    if name not in BACKENDS:
        raise ValueError(f"backend {name!r} unavailable; have {sorted(BACKENDS)}")
    BACKEND = name
    _active = BACKENDS[name]


def pair_keys(color, k):
    return _active.pair_keys(color, k)


def rank_rows(keys):
    return _active.rank_rows(keys)
