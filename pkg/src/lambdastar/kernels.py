"""Hot-loop kernels, compiled when available.

The Cython build (``_ckernels``) is used if it imports; otherwise the
pure-Python ``_pykernels`` is used.  Set ``LAMBDASTAR_PURE_PYTHON=1`` to
force the fallback.  Both expose ``forbidden_free``, ``member_mask`` and
``factor_matrix`` with identical results.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("LAMBDASTAR_PURE_PYTHON") == "1":
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels

BACKEND: str = _impl.BACKEND
forbidden_free = _impl.forbidden_free
member_mask = _impl.member_mask
factor_matrix = _impl.factor_matrix

__all__ = ["BACKEND", "forbidden_free", "member_mask", "factor_matrix"]
