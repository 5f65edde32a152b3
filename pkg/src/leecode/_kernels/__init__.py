"""Hot arithmetic kernels with a compiled core and a NumPy fallback.

The compiled Cython extension (``leecode._kernels._speedups``) accelerates
the table-backed kernels for q in {2, 4}; everything else runs on the
NumPy implementations in :mod:`leecode._kernels.pybackend`.  The backend
is chosen once at import time:

* ``LEECODE_BACKEND=c``  force the compiled core (ImportError if absent),
* ``LEECODE_BACKEND=py`` force pure NumPy,
* unset: compiled core when available, NumPy otherwise.
"""
from __future__ import annotations

import importlib
import os

import numpy as np

from . import pybackend as _pb

_requested = os.environ.get("LEECODE_BACKEND", "").strip().lower()
_speedups = None
if _requested != "py":
    try:
        _speedups = importlib.import_module(__name__ + "._speedups")
    except ImportError:
        _speedups = None
        if _requested == "c":
            raise


def active_backend() -> str:
    """Name of the backend the kernels run on: 'c' or 'py'."""
    return "c" if _speedups is not None else "py"


def _as_vec(a) -> np.ndarray:
    return np.ascontiguousarray(a, dtype=np.int64)


class Kernel:
    """Vectorized arithmetic on packed element arrays of one Galois ring.

    Parameters
    ----------
    q, m:
        base modulus p^r and extension degree.
    red:
        int64 array of shape (m-1, m); row i holds the digits of
        X^(m+i) mod f.  None when m == 1.
    table:
        flat int32 multiplication table of size**2 entries, or None for
        rings too large to tabulate.
    """

    def __init__(self, q: int, m: int, red: np.ndarray | None, table=None):
        self.q = q
        self.m = m
        self.size = q**m
        self.red = red
        self.table = table
        self.codec = _pb.DigitCodec(q, m)
        if q == 4:
            self._lo = _pb.lo_mask(m)
            self._full = _pb.full_mask(m)
            self.mode = "q4"
        elif q == 2:
            self.mode = "q2"
        else:
            self.mode = "gen"
        self._c = _speedups if (_speedups is not None and table is not None
                                and q in (2, 4)) else None

    # -- addition family ----------------------------------------------------

    def add(self, a, b):
        a, b = _as_vec(a), _as_vec(b)
        if self.mode == "q2":
            return a ^ b
        if self.mode == "q4":
            return _pb.add_q4(a, b, self._lo)
        return _pb.add_gen(a, b, self.codec)

    def neg(self, a):
        a = _as_vec(a)
        if self.mode == "q2":
            return a.copy()
        if self.mode == "q4":
            return _pb.neg_q4(a, self._lo, self._full)
        return _pb.neg_gen(a, self.codec)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def ring_sum(self, a) -> int:
        return _pb.ring_sum_gen(_as_vec(a), self.codec)

    # -- multiplication family ----------------------------------------------

    def mul(self, a, b):
        a, b = _as_vec(a), _as_vec(b)
        if self.table is None:
            return _pb.mul_gen(a, b, self.codec, self.red)
        if self._c is not None:
            out = np.empty(len(a), dtype=np.int64)
            self._c.mul_vec(a, b, out, self.table, self.size)
            return out
        return _pb.mul_tab(a, b, self.table, self.size)

    def mul_scalar(self, c: int, a):
        a = _as_vec(a)
        if self.table is None:
            return _pb.mul_gen(np.full(len(a), c, np.int64), a, self.codec, self.red)
        return _pb.mul_scalar_tab(c, a, self.table, self.size)

    def conv(self, a, b, nout: int | None = None):
        """Convolution of packed coefficient vectors, truncated to nout."""
        a, b = _as_vec(a), _as_vec(b)
        if nout is None:
            nout = len(a) + len(b) - 1 if len(a) and len(b) else 0
        if nout == 0:
            return np.zeros(0, dtype=np.int64)
        if self.table is None:
            return _pb.conv_gen(a, b, nout, self.codec, self.red)
        if self._c is not None:
            out = np.zeros(nout, dtype=np.int64)
            if self.mode == "q4":
                self._c.conv_q4(a, b, out, self.table, self.size,
                                self._lo, self._full)
            else:
                self._c.conv_q2(a, b, out, self.table, self.size)
            return out
        return _pb.conv_tab(a, b, nout, self.table, self.size, self.add)

    def axpy_rows(self, block, coef, row):
        """Return block - outer(coef, row), all packed."""
        block = np.ascontiguousarray(block, dtype=np.int64)
        coef, row = _as_vec(coef), _as_vec(row)
        if self.table is None:
            return _pb.axpy_rows_gen(block, coef, row, self.codec, self.red)
        if self._c is not None:
            out = np.empty_like(block)
            if self.mode == "q4":
                self._c.axpy_rows_q4(block, coef, row, out, self.table,
                                     self.size, self._lo, self._full)
            else:
                self._c.axpy_rows_q2(block, coef, row, out, self.table, self.size)
            return out
        return _pb.axpy_rows_tab(block, coef, row, self.table, self.size,
                                 self.add, self.neg)

    def matvec(self, mat, vec):
        mat = np.ascontiguousarray(mat, dtype=np.int64)
        vec = _as_vec(vec)
        if self.table is None:
            return _pb.matvec_gen(mat, vec, self.codec, self.red)
        return _pb.matvec_tab(mat, vec, self.table, self.size, self.add)
