"""Brute-force ground-truth oracles.

These enumerate messages directly and never touch the decoders they are
used to judge.  Enumeration is message-lexicographic; sizes are capped
so a misconfigured test cannot silently take hours.
"""
from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import TooLarge
from .nega import NegaCode, _LEE_LUT, lee_distance
from .ring import RingElem
from .rs import RSCode

_BLOCK = 1 << 16


def _nega_generator_matrix(code: NegaCode) -> np.ndarray:
    G = np.zeros((code.k, code.n), dtype=np.int64)
    d = len(code.gen) - 1
    for i in range(code.k):
        G[i, i : i + d + 1] = code.gen
    return G


def oracle_lee_min_distance(code: NegaCode) -> int:
    """Minimum Lee weight over all 4^k - 1 nonzero codewords."""
    if code.k > 12:
        raise TooLarge(f"4^{code.k} codewords is beyond the oracle cap")
    G = _nega_generator_matrix(code)
    total = 4**code.k
    best = None
    for lo in range(0, total, _BLOCK):
        hi = min(total, lo + _BLOCK)
        idx = np.arange(lo, hi, dtype=np.int64)
        msgs = (idx[:, None] >> (2 * np.arange(code.k))) & 3
        words = (msgs @ G) % 4
        weights = _LEE_LUT[words].sum(axis=1)
        if lo == 0:
            weights = weights[1:]  # skip the zero message
        if len(weights):
            m = int(weights.min())
            best = m if best is None else min(best, m)
    return best


def oracle_list_decode(code, y, radius: int, metric: str = "hamming"):
    """Exhaustive list of codewords within the radius of y.

    RS codes use the Hamming metric and return (message poly, codeword)
    pairs; negacyclic codes use the Lee metric and return codeword
    arrays.
    """
    if isinstance(code, RSCode):
        return _oracle_rs(code, y, radius)
    if metric != "lee":
        raise ValueError("negacyclic oracle runs in the Lee metric")
    return _oracle_nega(code, y, radius)


def _oracle_rs(code: RSCode, y: Sequence[RingElem], radius: int):
    params = code.params
    total = params.size**code.k
    if total > 1 << 24:
        raise TooLarge(f"|R|^k = {total} is beyond the oracle cap")
    kern = params.kernel()
    yv = params.pack(list(y))
    # evaluation table: column j holds alpha_j^i for i < k
    out = []
    pows = np.zeros((code.k, code.n), dtype=np.int64)
    for j, a in enumerate(code.alphas):
        acc = params.one()
        for i in range(code.k):
            pows[i, j] = acc.idx
            acc = acc * a
    for lo in range(0, total, _BLOCK):
        hi = min(total, lo + _BLOCK)
        idx = np.arange(lo, hi, dtype=np.int64)
        digits = np.empty((hi - lo, code.k), dtype=np.int64)
        rem = idx.copy()
        for i in range(code.k):
            digits[:, i] = rem % params.size
            rem //= params.size
        words = np.zeros((hi - lo, code.n), dtype=np.int64)
        for j in range(code.n):
            acc = np.zeros(hi - lo, dtype=np.int64)
            for i in range(code.k):
                acc = kern.add(acc, kern.mul_scalar(int(pows[i, j]),
                                                    digits[:, i]))
            words[:, j] = acc
        dists = (words != yv[None, :]).sum(axis=1)
        for row in np.nonzero(dists <= radius)[0]:
            msg_digits = digits[row]
            from .poly import UniPoly

            f = UniPoly(params, params.unpack(msg_digits))
            out.append((f, params.unpack(words[row])))
    return out


def _oracle_nega(code: NegaCode, y, radius: int):
    if code.k > 12:
        raise TooLarge(f"4^{code.k} codewords is beyond the oracle cap")
    G = _nega_generator_matrix(code)
    y = np.asarray(y, dtype=np.int64) % 4
    total = 4**code.k
    out = []
    for lo in range(0, total, _BLOCK):
        hi = min(total, lo + _BLOCK)
        idx = np.arange(lo, hi, dtype=np.int64)
        msgs = (idx[:, None] >> (2 * np.arange(code.k))) & 3
        words = (msgs @ G) % 4
        dists = _LEE_LUT[(words - y) % 4].sum(axis=1)
        for row in np.nonzero(dists <= radius)[0]:
            out.append(words[row].copy())
    return out
