"""Exact arithmetic in Z_{p^r} and the Galois ring GR(p^r, m).

A ring is described by :class:`GaloisRingParams`; its elements are
:class:`RingElem` values holding the coordinates of the element in the
basis 1, theta, ..., theta^(m-1), packed into a single integer (digit i
of the index, base q = p^r, is coordinate i).  The defining polynomial f
is the Hensel lift of a primitive polynomial over Z_p, so theta (the
class of X) has multiplicative order p^m - 1 and its powers together
with 0 form the Teichmueller set, a section of the canonical map mu onto
the residue field F_{p^m} = GR(p, m).

All values are immutable after construction; operations are pure
functions, so params objects and elements can be shared freely across
threads.
"""
from __future__ import annotations

import functools
from typing import Iterable, Sequence

import numpy as np

from ._kernels import Kernel
from .errors import NoPrimitivePolynomial, NotAUnit, ParamsMismatch, RootOrderFailure

# mul tables are built for rings with at most this many elements
TABLE_LIMIT = 4096
# digit matrices are kept for rings with at most this many elements
DIGIT_LIMIT = 1 << 20
# enumeration guard for construct_galois_ring (desk scale)
ENUM_LIMIT = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class GaloisRingParams:
    """Immutable description of GR(p^r, m) with defining polynomial f.

    Not constructed directly in normal use; see
    :func:`construct_galois_ring`.
    """

    def __init__(self, p: int, r: int, m: int, f: Sequence[int], *,
                 validate: bool = True):
        self.p = int(p)
        self.r = int(r)
        self.m = int(m)
        self.q = p**r
        self.size = self.q**m
        f = tuple(int(c) % self.q for c in f)
        if len(f) != m + 1 or f[m] != 1:
            raise ValueError("defining polynomial must be monic of degree m")
        self.f = f
        # digits of X^(m+i) mod f for i = 0..m-2
        self._red_rows = self._build_red_rows()
        self._theta_idx = self.q if m > 1 else (-f[0]) % self.q
        self._digits_tab: np.ndarray | None = None
        self._mul_flat: np.ndarray | None = None
        self._val_tab: np.ndarray | None = None
        self._inv_tab = None
        self._kernel: Kernel | None = None
        self._teich: tuple | None = None
        self._residue: GaloisRingParams | None = None
        self._reduced: dict[int, GaloisRingParams] = {}
        self._zero = RingElem(self, 0)
        self._one = RingElem(self, 1)
        if validate:
            self._check_theta_order()

    # -- identity ------------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, GaloisRingParams):
            return NotImplemented
        return (self.p, self.r, self.m, self.f) == (other.p, other.r, other.m, other.f)

    def __hash__(self):
        return hash((self.p, self.r, self.m, self.f))

    def __repr__(self):
        return f"GR({self.q},{self.m})"

    # -- digit plumbing --------------------------------------------------------

    def _build_red_rows(self) -> list[tuple[int, ...]] | None:
        if self.m == 1:
            return None
        q, m = self.q, self.m
        # X^m = -(f_0 + f_1 X + ... + f_{m-1} X^{m-1})
        rows = [tuple((-c) % q for c in self.f[:m])]
        for _ in range(m - 2):
            prev = rows[-1]
            shifted = (0,) + prev[:-1]
            top = prev[-1]
            rows.append(tuple((shifted[j] + top * rows[0][j]) % q for j in range(m)))
        return rows

    def digits_of(self, idx: int) -> tuple[int, ...]:
        q = self.q
        return tuple((idx // q**i) % q for i in range(self.m))

    def idx_of(self, digits: Iterable[int]) -> int:
        q = self.q
        out = 0
        for i, c in enumerate(digits):
            out += (int(c) % q) * q**i
        return out

    # -- scalar arithmetic on packed indices -----------------------------------

    def add_idx(self, a: int, b: int) -> int:
        q = self.q
        if q == 2:
            return a ^ b
        if q == 4:
            lo = (self.size - 1) // 3
            return (a ^ b) ^ (((a & b) & lo) << 1)
        da, db = self.digits_of(a), self.digits_of(b)
        return self.idx_of((x + y) % q for x, y in zip(da, db))

    def neg_idx(self, a: int) -> int:
        q = self.q
        if q == 2:
            return a
        if q == 4:
            lo = (self.size - 1) // 3
            full = self.size - 1
            b = a ^ full
            return (b ^ lo) ^ (((b & lo) & lo) << 1)
        return self.idx_of((-x) % q for x in self.digits_of(a))

    def mul_idx(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        tab = self.mul_table()
        if tab is not None:
            return tab.item(a * self.size + b)
        return self._mul_idx_slow(a, b)

    def _mul_idx_slow(self, a: int, b: int) -> int:
        q, m = self.q, self.m
        if m == 1:
            return (a * b) % q
        da, db = self.digits_of(a), self.digits_of(b)
        acc = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    acc[i + j] += x * y
        red = self._red_rows
        for k in range(2 * m - 2, m - 1, -1):
            c = acc[k] % q
            if c:
                row = red[k - m]
                for j in range(m):
                    acc[j] += c * row[j]
        return self.idx_of(acc[:m])

    def pow_idx(self, a: int, e: int) -> int:
        out, base = 1, a
        while e:
            if e & 1:
                out = self.mul_idx(out, base)
            base = self.mul_idx(base, base)
            e >>= 1
        return out

    def val_idx(self, a: int) -> int:
        """p-adic valuation, with val(0) = r."""
        if a == 0:
            return self.r
        p = self.p
        best = self.r
        for c in self.digits_of(a):
            v = 0
            while c and c % p == 0:
                c //= p
                v += 1
            if c:
                best = min(best, v)
        return best

    def pdiv_idx(self, a: int, v: int) -> int:
        """Divide every coordinate by p^v (caller guarantees exactness)."""
        if v == 0:
            return a
        pv = self.p**v
        return self.idx_of(c // pv for c in self.digits_of(a))

    def mu_idx(self, a: int) -> int:
        p = self.p
        fld = self.residue_field()
        return fld.idx_of(c % p for c in self.digits_of(a))

    def lift_idx(self, field_idx: int) -> int:
        fld = self.residue_field()
        return self.idx_of(fld.digits_of(field_idx))

    def inv_idx(self, a: int) -> int:
        if self.val_idx(a) != 0:
            raise NotAUnit(f"{self.digits_of(a)} lies in the maximal ideal")
        if self.r == 1:
            return self.pow_idx(a, self.size - 2)
        fld = self.residue_field()
        y = self.lift_idx(fld.pow_idx(self.mu_idx(a), fld.size - 2))
        two = self.add_idx(1, 1)
        steps = max(1, (self.r - 1).bit_length())
        for _ in range(steps):
            # y <- y(2 - a*y), quadratic Newton lift of the field inverse
            ay = self.mul_idx(a, y)
            y = self.mul_idx(y, self.add_idx(two, self.neg_idx(ay)))
        return y

    def teich_lift_idx(self, field_idx: int) -> int:
        t = self.lift_idx(field_idx)
        for _ in range(self.r - 1):
            t = self.pow_idx(t, self.p**self.m)
        return t

    # -- elements ---------------------------------------------------------------

    def zero(self) -> RingElem:
        return self._zero

    def one(self) -> RingElem:
        return self._one

    def theta(self) -> RingElem:
        return RingElem(self, self._theta_idx)

    def elem(self, idx: int) -> RingElem:
        return RingElem(self, idx)

    def elem_from_coeffs(self, coeffs: Iterable[int]) -> RingElem:
        return RingElem(self, self.idx_of(coeffs))

    def int_elem(self, n: int) -> RingElem:
        """Image of the integer n under the canonical map Z -> R."""
        return RingElem(self, n % self.q)

    # -- derived rings --------------------------------------------------------

    def residue_field(self) -> GaloisRingParams:
        if self.r == 1:
            return self
        if self._residue is None:
            self._residue = self.reduced_to(1)
        return self._residue

    def reduced_to(self, r2: int) -> GaloisRingParams:
        """GR(p^r2, m) with the same defining polynomial reduced mod p^r2."""
        if r2 == self.r:
            return self
        if not 1 <= r2 < self.r:
            raise ValueError("reduction level out of range")
        got = self._reduced.get(r2)
        if got is None:
            pj = self.p**r2
            got = GaloisRingParams(self.p, r2, self.m,
                                   [c % pj for c in self.f], validate=False)
            self._reduced[r2] = got
        return got

    # -- Teichmueller set -------------------------------------------------------

    def teichmuller_set(self) -> tuple[RingElem, ...]:
        """(0, 1, theta, theta^2, ..., theta^(p^m-2)); mu maps it bijectively
        onto the residue field."""
        if self._teich is None:
            out = [self._zero, self._one]
            t = self._theta_idx
            cur = 1
            for _ in range(self.p**self.m - 2):
                cur = self.mul_idx(cur, t)
                out.append(RingElem(self, cur))
            self._teich = tuple(out)
        return self._teich

    def teichmuller_lift(self, xbar: RingElem) -> RingElem:
        """The unique Teichmueller element t with mu(t) = xbar."""
        if xbar.params != self.residue_field():
            raise ParamsMismatch("lift argument must live in the residue field")
        return RingElem(self, self.teich_lift_idx(xbar.idx))

    # -- lazy tables -------------------------------------------------------------

    def digit_matrix(self) -> np.ndarray | None:
        if self._digits_tab is None and self.size <= DIGIT_LIMIT:
            idx = np.arange(self.size, dtype=np.int64)
            qpow = self.q ** np.arange(self.m, dtype=np.int64)
            self._digits_tab = ((idx[:, None] // qpow) % self.q).astype(np.int64)
        return self._digits_tab

    def mul_table(self) -> np.ndarray | None:
        if self._mul_flat is None and self.size <= TABLE_LIMIT:
            self._mul_flat = self._build_mul_table()
        return self._mul_flat

    def _build_mul_table(self) -> np.ndarray:
        q, m, size = self.q, self.m, self.size
        if m == 1:
            a = np.arange(size, dtype=np.int64)
            return ((a[:, None] * a[None, :]) % q).astype(np.int32).ravel()
        D = self.digit_matrix()
        red = np.array(self._red_rows, dtype=np.int64)
        qpow = self.q ** np.arange(m, dtype=np.int64)
        table = np.empty(size * size, dtype=np.int32)
        chunk = max(1, (1 << 22) // (size * (2 * m - 1)))
        for lo in range(0, size, chunk):
            hi = min(size, lo + chunk)
            acc = np.zeros((hi - lo, size, 2 * m - 1), dtype=np.int64)
            for i in range(m):
                acc[:, :, i : i + m] += D[lo:hi, i, None, None] * D[None, :, :]
            acc %= q
            for k in range(2 * m - 2, m - 1, -1):
                c = acc[:, :, k]
                acc[:, :, :m] = (acc[:, :, :m] + c[:, :, None] * red[k - m]) % q
            block = (acc[:, :, :m] * qpow).sum(axis=2)
            table[lo * size : hi * size] = block.astype(np.int32).ravel()
        return table

    def val_table(self) -> np.ndarray | None:
        if self._val_tab is None and self.size <= TABLE_LIMIT:
            D = self.digit_matrix()
            vals = np.full(self.q, self.r, dtype=np.int64)
            for c in range(1, self.q):
                v, x = 0, c
                while x % self.p == 0:
                    x //= self.p
                    v += 1
                vals[c] = v
            self._val_tab = np.take(vals, D).min(axis=1)
            self._val_tab[0] = self.r
        return self._val_tab

    def kernel(self) -> Kernel:
        if self._kernel is None:
            red = (np.array(self._red_rows, dtype=np.int64)
                   if self._red_rows is not None else None)
            self._kernel = Kernel(self.q, self.m, red, self.mul_table())
        return self._kernel

    # -- packed array helpers ----------------------------------------------------

    def pack(self, elems: Sequence[RingElem]) -> np.ndarray:
        return np.fromiter((e.idx for e in elems), dtype=np.int64, count=len(elems))

    def unpack(self, arr) -> list[RingElem]:
        return [RingElem(self, int(i)) for i in arr]

    # -- construction-time check --------------------------------------------------

    def _check_theta_order(self) -> None:
        n = self.p**self.m - 1
        t = self._theta_idx
        if self.pow_idx(t, n) != 1:
            raise RootOrderFailure("theta does not have order p^m - 1")
        for ell in prime_factors(n):
            if self.pow_idx(t, n // ell) == 1:
                raise RootOrderFailure("theta order divides a proper divisor")


class RingElem:
    """Element of a Galois ring in the theta-power basis, fully reduced."""

    __slots__ = ("params", "idx")

    def __init__(self, params: GaloisRingParams, idx: int):
        self.params = params
        self.idx = int(idx)

    def _match(self, other: RingElem) -> None:
        if self.params is not other.params and self.params != other.params:
            raise ParamsMismatch(f"{self.params} vs {other.params}")

    def __add__(self, other: RingElem) -> RingElem:
        self._match(other)
        return RingElem(self.params, self.params.add_idx(self.idx, other.idx))

    def __sub__(self, other: RingElem) -> RingElem:
        self._match(other)
        return RingElem(self.params,
                        self.params.add_idx(self.idx, self.params.neg_idx(other.idx)))

    def __neg__(self) -> RingElem:
        return RingElem(self.params, self.params.neg_idx(self.idx))

    def __mul__(self, other: RingElem) -> RingElem:
        self._match(other)
        return RingElem(self.params, self.params.mul_idx(self.idx, other.idx))

    def __pow__(self, e: int) -> RingElem:
        if e < 0:
            return self.inv() ** (-e)
        return RingElem(self.params, self.params.pow_idx(self.idx, e))

    def __eq__(self, other):
        if not isinstance(other, RingElem):
            return NotImplemented
        return self.idx == other.idx and self.params == other.params

    def __hash__(self):
        return hash((self.idx, self.params.q, self.params.m))

    def __bool__(self):
        return self.idx != 0

    @property
    def is_zero(self) -> bool:
        return self.idx == 0

    @property
    def is_unit(self) -> bool:
        return self.params.val_idx(self.idx) == 0

    def val(self) -> int:
        return self.params.val_idx(self.idx)

    def pdiv(self, v: int) -> RingElem:
        return RingElem(self.params, self.params.pdiv_idx(self.idx, v))

    def unit_part(self) -> RingElem:
        """u with self = u * p^val(self) (canonical coordinatewise choice)."""
        return self.pdiv(self.val())

    def inv(self) -> RingElem:
        return RingElem(self.params, self.params.inv_idx(self.idx))

    def mu(self) -> RingElem:
        """Image under the canonical map onto the residue field."""
        fld = self.params.residue_field()
        return RingElem(fld, self.params.mu_idx(self.idx))

    def coeffs(self) -> tuple[int, ...]:
        return self.params.digits_of(self.idx)

    def __repr__(self):
        return "[" + ",".join(str(c) for c in self.coeffs()) + "]"


def unit_inverse(x: RingElem) -> RingElem:
    """Inverse of a unit, via Newton lifting of the residue-field inverse."""
    return x.inv()


def mu_reduce(x: RingElem) -> RingElem:
    return x.mu()


def ring_arith(x: RingElem, y: RingElem, op: str) -> RingElem:
    """Named arithmetic entry point: op in {add, sub, mul, neg}."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "neg":
        return -x
    raise ValueError(f"unknown op {op!r}")


def teichmuller_set(params: GaloisRingParams) -> tuple[RingElem, ...]:
    return params.teichmuller_set()


def teichmuller_lift(params: GaloisRingParams, xbar: RingElem) -> RingElem:
    return params.teichmuller_lift(xbar)


@functools.lru_cache(maxsize=None)
def construct_galois_ring(p: int, r: int, m: int) -> GaloisRingParams:
    """Build GR(p^r, m) with f the Hensel lift of a primitive polynomial.

    The search over monic degree-m polynomials runs in lexicographic
    coefficient order (constant coefficient most significant), so every
    run constructs the identical ring.
    """
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if r < 1 or m < 1:
        raise ValueError("need r >= 1 and m >= 1")
    if p**m > ENUM_LIMIT:
        raise ValueError(f"p^m = {p**m} beyond desk scale {ENUM_LIMIT}")

    if m == 1:
        g = _smallest_field_generator(p)
        q = p**r
        t = g
        for _ in range(r - 1):
            t = pow(t, p, q)
        return GaloisRingParams(p, r, 1, ((-t) % q, 1))

    from . import hensel as _hensel
    from . import poly as _poly

    fld = construct_galois_ring(p, 1, 1)
    fbar = _search_primitive(fld, p, m)
    if r == 1:
        return GaloisRingParams(p, 1, m, [c.idx for c in fbar.coeffs])

    f = _hensel.lift_defining_polynomial(fbar, p, r)
    return GaloisRingParams(p, r, m, f)


def _smallest_field_generator(p: int) -> int:
    if p == 2:
        return 1
    for g in range(2, p):
        ok = True
        for ell in prime_factors(p - 1):
            if pow(g, (p - 1) // ell, p) == 1:
                ok = False
                break
        if ok:
            return g
    raise NoPrimitivePolynomial(f"no generator mod {p}")


def _search_primitive(fld: GaloisRingParams, p: int, m: int):
    from itertools import product

    from . import poly as _poly

    n = p**m - 1
    nfactors = prime_factors(n)
    x = _poly.UniPoly(fld, [fld.zero(), fld.one()])
    for tail in product(range(p), repeat=m):
        if tail[0] == 0:
            continue  # zero constant term is never irreducible for m >= 1
        f = _poly.UniPoly(fld, [fld.int_elem(c) for c in tail] + [fld.one()])
        if not _poly.is_irreducible(f):
            continue
        # primitive iff X has order exactly p^m - 1 mod f
        if any(_poly.pow_mod(x, n // ell, f) == _poly.UniPoly(fld, [fld.one()])
               for ell in nfactors):
            continue
        return f
    raise NoPrimitivePolynomial(f"no primitive polynomial of degree {m} over F_{p}")
