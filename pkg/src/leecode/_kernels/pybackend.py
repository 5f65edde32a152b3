"""Pure NumPy implementation of the packed-element vector kernels.

An element of GR(p^r, m) with coordinate digits ``c_0..c_{m-1}`` (each in
``[0, q)``, ``q = p^r``) is packed as the integer ``sum c_i * q**i``.  All
kernel functions operate on ``int64`` arrays of packed values.

Addition is digitwise mod q.  For q = 2 it is XOR; for q = 4 it is a
carry-confined bit trick; for other q a digit-plane codec is used.
Multiplication goes through a precomputed flat table when the ring is
small enough, otherwise through digit-plane convolution against the
reduction rows of the defining polynomial.
"""
from __future__ import annotations

import numpy as np


def lo_mask(m: int) -> int:
    """Bit mask selecting the low bit of each 2-bit limb (q = 4 packing)."""
    return (4**m - 1) // 3


def full_mask(m: int) -> int:
    return 4**m - 1


def add_q4(a, b, lo):
    # per-limb mod-4 addition: xor plus a carry confined to its own limb
    return (a ^ b) ^ (((a & b) & lo) << 1)


def neg_q4(a, lo, full):
    return add_q4(a ^ full, lo, lo)


class DigitCodec:
    """Pack/unpack between packed integers and digit planes, base q."""

    def __init__(self, q: int, m: int):
        self.q = q
        self.m = m
        self.qpow = q ** np.arange(m, dtype=np.int64)

    def unpack(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self.qpow) % self.q

    def pack(self, digits) -> np.ndarray:
        digits = np.asarray(digits, dtype=np.int64) % self.q
        return (digits * self.qpow).sum(axis=-1)


def add_gen(a, b, codec: DigitCodec):
    return codec.pack(codec.unpack(a) + codec.unpack(b))


def neg_gen(a, codec: DigitCodec):
    return codec.pack(-codec.unpack(a))


def mul_gen(a, b, codec: DigitCodec, red: np.ndarray | None):
    """Elementwise product via digit convolution and reduction mod f.

    ``red[i]`` holds the digits of X^(m+i) mod f; it is None when m == 1.
    """
    q, m = codec.q, codec.m
    da = codec.unpack(a)
    db = codec.unpack(b)
    shape = da.shape[:-1]
    acc = np.zeros(shape + (2 * m - 1,), dtype=np.int64)
    for i in range(m):
        acc[..., i : i + m] += da[..., i : i + 1] * db
    acc %= q
    if red is not None:
        for k in range(2 * m - 2, m - 1, -1):
            c = acc[..., k].copy()
            acc[..., k] = 0
            acc[..., :m] = (acc[..., :m] + c[..., None] * red[k - m]) % q
    return codec.pack(acc[..., :m])


def ring_sum_gen(a, codec: DigitCodec) -> int:
    """Ring sum of a 1-D packed array (addition is digitwise mod q)."""
    if len(a) == 0:
        return 0
    digits = codec.unpack(a).sum(axis=0) % codec.q
    return int(codec.pack(digits))


# ---------------------------------------------------------------------------
# table-backed kernels

def mul_tab(a, b, table, size):
    return np.take(table, a * size + b).astype(np.int64, copy=False)


def mul_scalar_tab(c, a, table, size):
    return np.take(table, c * size + a).astype(np.int64, copy=False)


def conv_tab(a, b, nout, table, size, add):
    """Truncated convolution out[k] = sum_{i+j=k} a[i]*b[j], k < nout."""
    la, lb = len(a), len(b)
    out = np.zeros(nout, dtype=np.int64)
    for i in range(min(la, nout)):
        hi = min(lb, nout - i)
        prod = np.take(table, a[i] * size + b[:hi]).astype(np.int64, copy=False)
        out[i : i + hi] = add(out[i : i + hi], prod)
    return out


def axpy_rows_tab(block, coef, row, table, size, add, neg):
    """block[i, :] - coef[i] * row, vectorized over the whole block."""
    prod = np.take(table, coef[:, None] * size + row[None, :]).astype(
        np.int64, copy=False
    )
    return add(block, neg(prod))


def matvec_tab(mat, vec, table, size, add):
    acc = np.zeros(mat.shape[0], dtype=np.int64)
    for j in range(mat.shape[1]):
        acc = add(acc, np.take(table, mat[:, j] * size + vec[j]).astype(np.int64))
    return acc


# ---------------------------------------------------------------------------
# generic (no-table) kernels, used for rings too large for a mul table

def conv_gen(a, b, nout, codec, red):
    la, lb = len(a), len(b)
    out = np.zeros(nout, dtype=np.int64)
    for i in range(min(la, nout)):
        hi = min(lb, nout - i)
        prod = mul_gen(np.full(hi, a[i], dtype=np.int64), b[:hi], codec, red)
        out[i : i + hi] = add_gen(out[i : i + hi], prod, codec)
    return out


def axpy_rows_gen(block, coef, row, codec, red):
    prod = mul_gen(coef[:, None], row[None, :], codec, red)
    return add_gen(block, neg_gen(prod, codec), codec)


def matvec_gen(mat, vec, codec, red):
    acc = np.zeros(mat.shape[0], dtype=np.int64)
    for j in range(mat.shape[1]):
        prod = mul_gen(mat[:, j], np.full(mat.shape[0], vec[j], np.int64), codec, red)
        acc = add_gen(acc, prod, codec)
    return acc
