"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``ORTHLAT_PURE=1`` to force the pure-Python backend.  The compiled
enumeration kernel works on C int64, so the wrapper falls back to the
pure version whenever the worst-case partial sum could overflow.
"""

import os

from orthlat import _pykernels

if os.environ.get("ORTHLAT_PURE"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from orthlat import _fastkernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

_INT64_SAFE = 1 << 62


def imat_mul(a, b, n, k, m):
    return _impl.imat_mul(a, b, n, k, m)


def enum_norm_vectors(gram, n, target, box):
    if _impl is not _pykernels:
        # |v^T G v| <= box^2 * sum|g_ij|; every partial sum obeys the
        # same bound, so int64 is safe below it.
        bound = (box * box) * sum(abs(g) for g in gram) + abs(target) + 1
        if bound < _INT64_SAFE:
            return _impl.enum_norm_vectors(gram, n, target, box)
    return _pykernels.enum_norm_vectors(gram, n, target, box)
