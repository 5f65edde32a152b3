"""Univariate and bivariate polynomial arithmetic over a Galois ring,
plus homogeneous linear solving over the chain ring via Smith-style
valuation-pivoted elimination.

:class:`UniPoly` is dense and generic over its coefficient domain: the
domain object only has to provide ``zero()`` and ``one()`` and its
elements the usual operators.  Coefficients are either :class:`RingElem`
values (fast kernel paths apply) or truncated power series (used by the
two-level Hensel lifting).  :class:`BiPoly` is sparse.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (DegreeTooSmall, DivisorNotMonic, NoNonzeroSolution,
                     NotAUnit)
from .ring import GaloisRingParams, RingElem

# scalar schoolbook is used below this combined length; kernels above
_KERNEL_MUL_CUTOFF = 24


class UniPoly:
    """Dense univariate polynomial, ascending coefficients, canonical form
    (no trailing zero coefficient; the zero polynomial has none)."""

    __slots__ = ("dom", "coeffs")

    def __init__(self, dom, coeffs: Iterable = ()):
        cs = list(coeffs)
        while cs and cs[-1].is_zero:
            cs.pop()
        self.dom = dom
        self.coeffs = tuple(cs)

    # -- basics ---------------------------------------------------------------

    @classmethod
    def zero(cls, dom) -> UniPoly:
        return cls(dom, ())

    @classmethod
    def one(cls, dom) -> UniPoly:
        return cls(dom, (dom.one(),))

    @classmethod
    def x(cls, dom) -> UniPoly:
        return cls(dom, (dom.zero(), dom.one()))

    @classmethod
    def from_ints(cls, params: GaloisRingParams, ints: Iterable[int]) -> UniPoly:
        return cls(params, [params.int_elem(c) for c in ints])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.dom.zero()

    def lc(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.dom.one()

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.dom == other.dom and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((len(self.coeffs),) + tuple(getattr(c, "idx", 0) for c in self.coeffs))

    def __repr__(self):
        if self.is_zero:
            return "poly{}"
        return "poly{" + ";".join(repr(c) for c in self.coeffs) + "}"

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.dom,
                       [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __sub__(self, other: UniPoly) -> UniPoly:
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.dom,
                       [self.coeff(i) - other.coeff(i) for i in range(n)])

    def __neg__(self) -> UniPoly:
        return UniPoly(self.dom, [-c for c in self.coeffs])

    def __mul__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly.zero(self.dom)
        dom = self.dom
        if (isinstance(dom, GaloisRingParams)
                and len(a) + len(b) > _KERNEL_MUL_CUTOFF):
            kern = dom.kernel()
            out = kern.conv(dom.pack(a), dom.pack(b))
            return UniPoly(dom, dom.unpack(out))
        out = [dom.zero()] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return UniPoly(dom, out)

    def scale(self, c) -> UniPoly:
        return UniPoly(self.dom, [c * x for x in self.coeffs])

    def shift(self, k: int) -> UniPoly:
        """Multiply by X^k."""
        if self.is_zero:
            return self
        return UniPoly(self.dom, (self.dom.zero(),) * k + self.coeffs)

    def truncate(self, k: int) -> UniPoly:
        return UniPoly(self.dom, self.coeffs[:k])

    def monic(self) -> UniPoly:
        return self.scale(self.lc().inv())

    def deriv(self) -> UniPoly:
        return UniPoly(self.dom, [int_multiple(self.coeffs[i], i)
                                  for i in range(1, len(self.coeffs))])

    def eval(self, x):
        acc = self.dom.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, fn: Callable, dom=None) -> UniPoly:
        return UniPoly(dom if dom is not None else self.dom,
                       [fn(c) for c in self.coeffs])


def int_multiple(c, n: int):
    """n * c for an integer n, by doubling (works in any coefficient domain)."""
    acc, out = c, None
    while n:
        if n & 1:
            out = acc if out is None else out + acc
        acc = acc + acc
        n >>= 1
    return out if out is not None else c - c


def quorem(f: UniPoly, h: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Division with remainder by a monic divisor: f = q*h + r, deg r < deg h."""
    if h.is_zero or not h.is_monic:
        raise DivisorNotMonic("quorem requires a monic divisor")
    dom = f.dom
    dh = h.degree
    if dh == 0:
        return f, UniPoly.zero(dom)
    if f.degree < dh:
        return UniPoly.zero(dom), f
    if isinstance(dom, GaloisRingParams) and f.degree > 128:
        return _quorem_packed(f, h)
    rem = list(f.coeffs)
    quo = [dom.zero()] * (len(rem) - dh)
    for k in range(len(rem) - 1, dh - 1, -1):
        c = rem[k]
        quo[k - dh] = c
        if c.is_zero:
            continue
        for j in range(dh):
            rem[k - dh + j] = rem[k - dh + j] - c * h.coeffs[j]
        rem[k] = dom.zero()
    return UniPoly(dom, quo), UniPoly(dom, rem[:dh])


def _quorem_packed(f: UniPoly, h: UniPoly) -> tuple[UniPoly, UniPoly]:
    dom: GaloisRingParams = f.dom
    kern = dom.kernel()
    dh = h.degree
    rem = dom.pack(f.coeffs)
    hv = dom.pack(h.coeffs[:dh])
    quo = np.zeros(len(rem) - dh, dtype=np.int64)
    for k in range(len(rem) - 1, dh - 1, -1):
        c = int(rem[k])
        quo[k - dh] = c
        if c:
            rem[k - dh : k] = kern.sub(rem[k - dh : k], kern.mul_scalar(c, hv))
            rem[k] = 0
    return UniPoly(dom, dom.unpack(quo)), UniPoly(dom, dom.unpack(rem[:dh]))


def conv_coeff(a: UniPoly, b: UniPoly, k: int):
    """Coefficient of X^k in a*b without forming the whole product."""
    dom = a.dom
    acc = dom.zero()
    lo = max(0, k - b.degree) if not b.is_zero else 0
    for i in range(lo, min(k, a.degree) + 1):
        acc = acc + a.coeffs[i] * b.coeff(k - i)
    return acc


def eval_uni(f: UniPoly, x):
    return f.eval(x)


# ---------------------------------------------------------------------------
# field-level helpers (coefficients in GR(p, m), i.e. r = 1)

def exact_div(f: UniPoly, g: UniPoly) -> UniPoly:
    """f / g for a divisor with unit leading coefficient; remainder must vanish."""
    u = g.lc()
    if not u.is_unit:
        raise DivisorNotMonic("exact_div needs a unit leading coefficient")
    q, r = quorem(f, g.monic())
    if not r.is_zero:
        raise ValueError("division is not exact")
    return q.scale(u.inv())


def poly_gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd over a field."""
    a, b = f, g
    while not b.is_zero:
        a, b = b, quorem(a, b.monic())[1]
    return a.monic() if not a.is_zero else a


def bezout_coprime(f: UniPoly, g: UniPoly) -> tuple[UniPoly, UniPoly]:
    """(s, t) with s*f + t*g = 1 over a field; raises if gcd != 1."""
    dom = f.dom
    r0, r1 = f, g
    s0, s1 = UniPoly.one(dom), UniPoly.zero(dom)
    t0, t1 = UniPoly.zero(dom), UniPoly.one(dom)
    while not r1.is_zero:
        lcinv = r1.lc().inv()
        q, r = quorem(r0, r1.monic())
        q = q.scale(lcinv)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.degree != 0:
        raise ValueError("polynomials are not coprime")
    c = r0.coeffs[0].inv()
    return s0.scale(c), t0.scale(c)


def pow_mod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    out = UniPoly.one(base.dom)
    b = quorem(base, mod.monic())[1]
    while e:
        if e & 1:
            out = quorem(out * b, mod.monic())[1]
        b = quorem(b * b, mod.monic())[1]
        e >>= 1
    return out


def is_irreducible(f: UniPoly) -> bool:
    """Rabin test over the coefficient field F_Q."""
    field: GaloisRingParams = f.dom
    n = f.degree
    if n <= 0:
        return False
    if n == 1:
        return True
    Q = field.size
    x = UniPoly.x(field)
    if pow_mod(x, Q**n, f) != quorem(x, f.monic())[1]:
        return False
    from .ring import prime_factors

    for ell in prime_factors(n):
        h = pow_mod(x, Q ** (n // ell), f) - x
        if poly_gcd(h, f).degree != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# bivariate polynomials

class BiPoly:
    """Sparse bivariate polynomial over a Galois ring.

    ``terms`` maps (i, j) -> nonzero RingElem for the monomial X^i Y^j.
    """

    __slots__ = ("params", "terms")

    def __init__(self, params: GaloisRingParams, terms=None):
        self.params = params
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, c in items:
                if not c.is_zero:
                    i, j = key
                    cur = t.get((i, j))
                    c = c if cur is None else cur + c
                    if c.is_zero:
                        t.pop((i, j), None)
                    else:
                        t[(i, j)] = c
        self.terms = t

    @classmethod
    def constant(cls, params: GaloisRingParams, c: RingElem) -> BiPoly:
        return cls(params, {(0, 0): c})

    @classmethod
    def from_unipoly_y(cls, f: UniPoly) -> BiPoly:
        return cls(f.dom, {(0, j): c for j, c in enumerate(f.coeffs)})

    @classmethod
    def from_unipoly_x(cls, f: UniPoly) -> BiPoly:
        return cls(f.dom, {(i, 0): c for i, c in enumerate(f.coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.params == other.params and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "bipoly{0}"
        bits = [f"{i} {j} {c!r}" for (i, j), c in self.sorted_terms()]
        return "bipoly{" + "; ".join(bits) + "}"

    def __add__(self, other: BiPoly) -> BiPoly:
        t = dict(self.terms)
        out = BiPoly(self.params)
        out.terms = t
        for key, c in other.terms.items():
            cur = t.get(key)
            s = c if cur is None else cur + c
            if s.is_zero:
                t.pop(key, None)
            else:
                t[key] = s
        return out

    def __neg__(self) -> BiPoly:
        out = BiPoly(self.params)
        out.terms = {k: -c for k, c in self.terms.items()}
        return out

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other: BiPoly) -> BiPoly:
        acc: dict[tuple[int, int], RingElem] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                c = c1 * c2
                cur = acc.get(key)
                c = c if cur is None else cur + c
                if c.is_zero:
                    acc.pop(key, None)
                else:
                    acc[key] = c
        out = BiPoly(self.params)
        out.terms = acc
        return out

    def scale(self, c: RingElem) -> BiPoly:
        out = BiPoly(self.params)
        out.terms = {}
        for k, v in self.terms.items():
            s = c * v
            if not s.is_zero:
                out.terms[k] = s
        return out

    def swap_vars(self) -> BiPoly:
        out = BiPoly(self.params)
        out.terms = {(j, i): c for (i, j), c in self.terms.items()}
        return out

    def eval(self, x: RingElem, y: RingElem) -> RingElem:
        # Horner in X over the Y-collected coefficient polynomials
        by_i: dict[int, dict[int, RingElem]] = {}
        for (i, j), c in self.terms.items():
            by_i.setdefault(i, {})[j] = c
        acc = self.params.zero()
        for i in range(self.degree_x(), -1, -1):
            acc = acc * x
            row = by_i.get(i)
            if row:
                inner = self.params.zero()
                for j in range(max(row), -1, -1):
                    inner = inner * y + row.get(j, self.params.zero())
                acc = acc + inner
        return acc

    def specialize_x(self, u: RingElem) -> UniPoly:
        """Q(u, Y) as a univariate polynomial in Y."""
        dy = self.degree_y()
        out = [self.params.zero()] * (dy + 1)
        pows = _power_list(u, self.degree_x())
        for (i, j), c in self.terms.items():
            out[j] = out[j] + c * pows[i]
        return UniPoly(self.params, out)

    def specialize_y(self, v: RingElem) -> UniPoly:
        return self.swap_vars().specialize_x(v)

    def y_coeff_polys(self) -> list[UniPoly]:
        """Coefficients of Y^0..Y^dy, each a UniPoly in X."""
        dy = self.degree_y()
        rows: list[dict[int, RingElem]] = [dict() for _ in range(dy + 1)]
        for (i, j), c in self.terms.items():
            rows[j][i] = c
        out = []
        for row in rows:
            n = max(row, default=-1) + 1
            out.append(UniPoly(self.params,
                               [row.get(i, self.params.zero()) for i in range(n)]))
        return out

    @classmethod
    def from_y_coeff_polys(cls, params: GaloisRingParams,
                           polys: Sequence[UniPoly]) -> BiPoly:
        terms = {}
        for j, f in enumerate(polys):
            for i, c in enumerate(f.coeffs):
                if not c.is_zero:
                    terms[(i, j)] = c
        out = cls(params)
        out.terms = terms
        return out


def _power_list(x: RingElem, n: int) -> list[RingElem]:
    out = [x.params.one()]
    for _ in range(n):
        out.append(out[-1] * x)
    return out


def eval_bi(Q: BiPoly, x: RingElem, y: RingElem) -> RingElem:
    return Q.eval(x, y)


def binomial_table(n: int, q: int) -> list[list[int]]:
    """Pascal's triangle with entries reduced mod q."""
    rows = [[1]]
    for i in range(1, n + 1):
        prev = rows[-1]
        row = [1] + [(prev[j - 1] + prev[j]) % q for j in range(1, i)] + [1]
        rows.append(row)
    return [[c % q for c in row] for row in rows]


def shift_bi(Q: BiPoly, x0: RingElem, y0: RingElem) -> BiPoly:
    """Q(X + x0, Y + y0) by binomial expansion."""
    params = Q.params
    dx, dy = Q.degree_x(), Q.degree_y()
    if Q.is_zero:
        return Q
    binom = binomial_table(max(dx, dy), params.q)
    xp = _power_list(x0, dx)
    yp = _power_list(y0, dy)
    acc: dict[tuple[int, int], RingElem] = {}
    for (i, j), c in Q.terms.items():
        for a in range(i + 1):
            ca = binom[i][a]
            if ca == 0:
                continue
            cxa = params.int_elem(ca) * xp[i - a] * c
            if cxa.is_zero:
                continue
            for b in range(j + 1):
                cb = binom[j][b]
                if cb == 0:
                    continue
                term = params.int_elem(cb) * yp[j - b] * cxa
                if term.is_zero:
                    continue
                key = (a, b)
                cur = acc.get(key)
                term = term if cur is None else cur + term
                if term.is_zero:
                    acc.pop(key, None)
                else:
                    acc[key] = term
    out = BiPoly(params)
    out.terms = acc
    return out


def y_reverse(Q: BiPoly, d: int) -> BiPoly:
    """Q(X, 1/Y) * Y^d: the term (i, j) moves to (i, d - j)."""
    if d < Q.degree_y():
        raise DegreeTooSmall(f"d = {d} < deg_Y = {Q.degree_y()}")
    out = BiPoly(Q.params)
    out.terms = {(i, d - j): c for (i, j), c in Q.terms.items()}
    return out


# ---------------------------------------------------------------------------
# support sets

@dataclass(frozen=True)
class SupportSet:
    """Finite set of exponent pairs (i, j) describing allowed monomials."""

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_iterable(cls, it: Iterable[tuple[int, int]]) -> SupportSet:
        return cls(tuple(sorted(set(it))))

    def __len__(self) -> int:
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return pair in set(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


# ---------------------------------------------------------------------------
# homogeneous solving over the chain ring

def _val_vec(params: GaloisRingParams, arr: np.ndarray) -> np.ndarray:
    tab = params.val_table()
    if tab is not None:
        return np.take(tab, arr)
    kern = params.kernel()
    digits = kern.codec.unpack(arr)
    q, p, r = params.q, params.p, params.r
    dv = np.full(q, r, dtype=np.int64)
    for c in range(1, q):
        v, x = 0, c
        while x % p == 0:
            x //= p
            v += 1
        dv[c] = v
    return np.take(dv, digits).min(axis=-1)


def _pdiv_vec(params: GaloisRingParams, arr: np.ndarray, v: int) -> np.ndarray:
    if v == 0:
        return arr
    kern = params.kernel()
    return kern.codec.pack(kern.codec.unpack(arr) // params.p**v)


def smith_solve_homogeneous(params: GaloisRingParams, A, rows: int | None = None,
                            cols: int | None = None,
                            free_index: int = 0) -> list[RingElem]:
    """Nonzero kernel vector of a wide matrix over the chain ring.

    Pivots are chosen with minimal p-adic valuation (ties: first entry in
    row-major order of the current submatrix), which is what makes
    unimodular elimination work over a chain ring: the pivot divides
    every entry of its submatrix.  The returned vector always carries a
    unit coordinate.

    ``free_index`` selects which free column is set to 1 (the kernel has
    one such generator per free column); callers that need a different
    kernel vector, e.g. because a degenerate interpolation polynomial
    resists factorization, can cycle through them deterministically.
    """
    if isinstance(A, np.ndarray):
        M = np.ascontiguousarray(A, dtype=np.int64).copy()
    else:
        M = np.array([[e.idx for e in row] for row in A], dtype=np.int64)
    nr, nc = M.shape
    if rows is not None and cols is not None:
        assert (nr, nc) == (rows, cols)
    orig = M.copy()
    kern = params.kernel()
    colperm = list(range(nc))
    r = params.r
    s = 0
    while s < nr and s < nc:
        sub = M[s:, s:]
        vals = _val_vec(params, sub)
        minval = int(vals.min())
        if minval >= r:
            break
        flat = int(np.argmin(vals))
        pi, pj = divmod(flat, nc - s)
        if pi:
            M[[s, s + pi], :] = M[[s + pi, s], :]
        if pj:
            M[:, [s, s + pj]] = M[:, [s + pj, s]]
            colperm[s], colperm[s + pj] = colperm[s + pj], colperm[s]
        piv = int(M[s, s])
        v = params.val_idx(piv)
        uinv = params.inv_idx(params.pdiv_idx(piv, v))
        below = M[s + 1 :, s]
        if below.any():
            qv = kern.mul_scalar(uinv, _pdiv_vec(params, below, v))
            M[s + 1 :, s:] = kern.axpy_rows(M[s + 1 :, s:], qv, M[s, s:])
        s += 1
    rank = s
    if rank >= nc:
        raise NoNonzeroSolution("matrix has no free column (cols <= rows?)")
    if not 0 <= free_index < nc - rank:
        raise NoNonzeroSolution(f"free column index {free_index} out of range")

    w = np.zeros(nc, dtype=np.int64)
    w[rank + free_index] = 1
    for i in range(rank - 1, -1, -1):
        prods = kern.mul(M[i, i + 1 :], w[i + 1 :])
        rhs = params.neg_idx(kern.ring_sum(prods))
        piv = int(M[i, i])
        v = params.val_idx(piv)
        assert params.val_idx(rhs) >= v, "chain-ring elimination invariant broken"
        w[i] = params.mul_idx(params.inv_idx(params.pdiv_idx(piv, v)),
                              params.pdiv_idx(rhs, v))

    out = np.zeros(nc, dtype=np.int64)
    for cur, orig_col in enumerate(colperm):
        out[orig_col] = w[cur]

    # content reduction: divide by p while every coordinate stays in (p)
    # and the result still solves the system (defensive; the construction
    # above already places a unit coordinate)
    while int(_val_vec(params, out).min()) >= 1:
        cand = _pdiv_vec(params, out, 1)
        if np.any(kern.matvec(orig, cand)):
            break
        out = cand

    assert not np.any(kern.matvec(orig, out)), "kernel vector check failed"
    assert out.any()
    return params.unpack(out)
