# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for table-backed Galois-ring kernels (q = 2, 4).

Mirrors the NumPy implementations in ``pybackend``; array arguments are
packed int64 element indices and ``table`` is the flat int32
multiplication table of the ring.
"""

import numpy as np

cimport numpy as cnp


cdef inline long _add4(long a, long b, long lo) nogil:
    return (a ^ b) ^ (((a & b) & lo) << 1)


cdef inline long _neg4(long a, long lo, long full) nogil:
    return _add4(a ^ full, lo, lo)


def mul_vec(long[::1] a, long[::1] b, long[::1] out,
            int[::1] table, long size):
    cdef Py_ssize_t i, n = a.shape[0]
    with nogil:
        for i in range(n):
            out[i] = table[a[i] * size + b[i]]


def conv_q4(long[::1] a, long[::1] b, long[::1] out,
            int[::1] table, long size, long lo, long full):
    """Truncated convolution with mod-4 limb addition."""
    cdef Py_ssize_t i, j, nout = out.shape[0]
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    cdef long ai, prod
    with nogil:
        for i in range(la):
            if i >= nout:
                break
            ai = a[i]
            if ai == 0:
                continue
            for j in range(lb):
                if i + j >= nout:
                    break
                prod = table[ai * size + b[j]]
                out[i + j] = _add4(out[i + j], prod, lo)


def conv_q2(long[::1] a, long[::1] b, long[::1] out,
            int[::1] table, long size):
    cdef Py_ssize_t i, j, nout = out.shape[0]
    cdef Py_ssize_t la = a.shape[0], lb = b.shape[0]
    cdef long ai
    with nogil:
        for i in range(la):
            if i >= nout:
                break
            ai = a[i]
            if ai == 0:
                continue
            for j in range(lb):
                if i + j >= nout:
                    break
                out[i + j] = out[i + j] ^ table[ai * size + b[j]]


def axpy_rows_q4(long[:, ::1] block, long[::1] coef, long[::1] row,
                 long[:, ::1] out, int[::1] table, long size,
                 long lo, long full):
    """out = block - outer(coef, row), elementwise in the ring."""
    cdef Py_ssize_t i, j, nr = block.shape[0], nc = block.shape[1]
    cdef long c, prod
    with nogil:
        for i in range(nr):
            c = coef[i]
            if c == 0:
                for j in range(nc):
                    out[i, j] = block[i, j]
                continue
            for j in range(nc):
                prod = table[c * size + row[j]]
                out[i, j] = _add4(block[i, j], _neg4(prod, lo, full), lo)


def axpy_rows_q2(long[:, ::1] block, long[::1] coef, long[::1] row,
                 long[:, ::1] out, int[::1] table, long size):
    cdef Py_ssize_t i, j, nr = block.shape[0], nc = block.shape[1]
    cdef long c
    with nogil:
        for i in range(nr):
            c = coef[i]
            if c == 0:
                for j in range(nc):
                    out[i, j] = block[i, j]
                continue
            for j in range(nc):
                out[i, j] = block[i, j] ^ table[c * size + row[j]]
