"""Truncated power series R[[W]]/(W^ell) over a Galois ring.

These are the coefficients of the second Hensel-lifting level in the
bivariate factorization: lifting a factorization of Q(u, Y) from R[Y]
to (R[X]/(X - u)^ell)[Y] is plain polynomial lifting once coefficients
are rewritten as series in W = X - u.
"""
from __future__ import annotations

import numpy as np

from .errors import NotAUnit
from .ring import GaloisRingParams, RingElem


class SeriesRing:
    """Coefficient domain handle for :class:`TruncSeries` values."""

    __slots__ = ("params", "ell")

    def __init__(self, params: GaloisRingParams, ell: int):
        if ell < 1:
            raise ValueError("series precision must be >= 1")
        self.params = params
        self.ell = ell

    def __eq__(self, other):
        if not isinstance(other, SeriesRing):
            return NotImplemented
        return self.params == other.params and self.ell == other.ell

    def __hash__(self):
        return hash((self.params, self.ell))

    def __repr__(self):
        return f"{self.params!r}[[W]]/W^{self.ell}"

    def zero(self) -> TruncSeries:
        return TruncSeries(self, np.zeros(self.ell, dtype=np.int64))

    def one(self) -> TruncSeries:
        arr = np.zeros(self.ell, dtype=np.int64)
        arr[0] = 1
        return TruncSeries(self, arr)

    def from_scalar(self, c: RingElem) -> TruncSeries:
        arr = np.zeros(self.ell, dtype=np.int64)
        arr[0] = c.idx
        return TruncSeries(self, arr)

    def from_coeffs(self, coeffs) -> TruncSeries:
        arr = np.zeros(self.ell, dtype=np.int64)
        for i, c in enumerate(coeffs[: self.ell]):
            arr[i] = c.idx if isinstance(c, RingElem) else int(c)
        return TruncSeries(self, arr)


class TruncSeries:
    """A series sum c_k W^k, k < ell, headquartered in a fixed SeriesRing."""

    __slots__ = ("ring", "arr")

    def __init__(self, ring: SeriesRing, arr: np.ndarray):
        self.ring = ring
        self.arr = arr

    @property
    def is_zero(self) -> bool:
        return not self.arr.any()

    @property
    def is_unit(self) -> bool:
        return self.ring.params.val_idx(int(self.arr[0])) == 0

    def coeff_elems(self) -> list[RingElem]:
        return self.ring.params.unpack(self.arr)

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.ring == other.ring and np.array_equal(self.arr, other.arr)

    def __repr__(self):
        return "series(" + ",".join(repr(c) for c in self.coeff_elems()) + ")"

    def __add__(self, other: TruncSeries) -> TruncSeries:
        kern = self.ring.params.kernel()
        return TruncSeries(self.ring, kern.add(self.arr, other.arr))

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        kern = self.ring.params.kernel()
        return TruncSeries(self.ring, kern.sub(self.arr, other.arr))

    def __neg__(self) -> TruncSeries:
        kern = self.ring.params.kernel()
        return TruncSeries(self.ring, kern.neg(self.arr))

    def __mul__(self, other: TruncSeries) -> TruncSeries:
        kern = self.ring.params.kernel()
        return TruncSeries(self.ring,
                           kern.conv(self.arr, other.arr, nout=self.ring.ell))

    def inv(self) -> TruncSeries:
        """Inverse via W-adic Newton iteration; needs a unit constant term."""
        params = self.ring.params
        c0 = int(self.arr[0])
        if params.val_idx(c0) != 0:
            raise NotAUnit("series constant term is not a unit")
        kern = params.kernel()
        ell = self.ring.ell
        y = np.zeros(ell, dtype=np.int64)
        y[0] = params.inv_idx(c0)
        prec = 1
        two = np.zeros(ell, dtype=np.int64)
        two[0] = params.add_idx(1, 1)
        while prec < ell:
            prec = min(2 * prec, ell)
            ay = kern.conv(self.arr[:prec], y[:prec], nout=prec)
            corr = kern.sub(two[:prec], ay)
            y = np.concatenate([kern.conv(y[:prec], corr, nout=prec),
                                np.zeros(ell - prec, dtype=np.int64)])
        return TruncSeries(self.ring, y)

    def truncated(self, ell2: int) -> TruncSeries:
        """Same series in the smaller ring R[[W]]/(W^ell2)."""
        ring2 = SeriesRing(self.ring.params, ell2)
        return TruncSeries(ring2, self.arr[:ell2].copy())

    def padded(self, ell2: int) -> TruncSeries:
        """Canonical lift into the larger ring (higher terms zero)."""
        ring2 = SeriesRing(self.ring.params, ell2)
        arr = np.zeros(ell2, dtype=np.int64)
        arr[: len(self.arr)] = self.arr
        return TruncSeries(ring2, arr)
