"""Exact linear-algebra kernels with a compiled fast path.

The compiled extension (``_fast``, Cython/int64) is preferred when it imports
and the inputs fit the guarded range; anything else runs on the pure-Python
arbitrary-precision reference (``_ref``).  Both implement the same algorithms
with the same pivoting, so results are identical either way.  Set
``STRATHOM_PURE=1`` to force the reference backend.
"""

import os

from . import _ref

try:
    if os.environ.get("STRATHOM_PURE"):
        raise ImportError("pure backend forced")
    from . import _fast
except ImportError:
    _fast = None

_I64_SAFE = 1 << 61


def backend_name():
    return "compiled" if _fast is not None else "pure"


def _fits_i64(a):
    return all(-_I64_SAFE <= v <= _I64_SAFE for row in a for v in row)


def _np(a, nrows, ncols):
    import numpy

    arr = numpy.zeros((nrows, ncols), dtype=numpy.int64)
    for i, row in enumerate(a):
        for j, v in enumerate(row):
            arr[i, j] = v
    return arr


def snf(a, nrows, ncols, transforms=False):
    if _fast is not None and _fits_i64(a):
        try:
            return _fast.snf_i64(_np(a, nrows, ncols), transforms)
        except OverflowError:
            pass
    return _ref.snf(a, nrows, ncols, transforms)


def kernel_basis(a, nrows, ncols):
    if _fast is not None and _fits_i64(a):
        try:
            return _fast.kernel_basis_i64(_np(a, nrows, ncols))
        except OverflowError:
            pass
    return _ref.kernel_basis(a, nrows, ncols)


def hermite_columns(b, nrows, ncols):
    if _fast is not None and _fits_i64(b):
        try:
            return _fast.hermite_columns_i64(_np(b, nrows, ncols))
        except OverflowError:
            pass
    return _ref.hermite_columns(b, nrows, ncols)


def solve_columns(b, nrows, ncols, y, ycols):
    if _fast is not None and _fits_i64(b) and _fits_i64(y):
        try:
            return _fast.solve_columns_i64(_np(b, nrows, ncols), _np(y, nrows, ycols))
        except OverflowError:
            pass
    return _ref.solve_columns(b, nrows, ncols, y, ycols)


def modp_rref(a, nrows, ncols, p):
    if _fast is not None and p < (1 << 30) and _fits_i64(a):
        rank, pivots, red = _fast.modp_rref_i64(_np(a, nrows, ncols), p)
        return rank, pivots, red.tolist()
    return _ref.modp_rref(a, nrows, ncols, p)


def modp_rank(a, nrows, ncols, p):
    if _fast is not None and p < (1 << 30) and _fits_i64(a):
        return _fast.modp_rank_i64(_np(a, nrows, ncols), p)
    return _ref.modp_rank(a, nrows, ncols, p)


def modp_kernel(a, nrows, ncols, p):
    if _fast is not None and p < (1 << 30) and _fits_i64(a):
        return _fast.modp_kernel_i64(_np(a, nrows, ncols), p)
    return _ref.modp_kernel(a, nrows, ncols, p)
