"""Reed-Solomon codes over Galois rings and their list decoding.

Encoding is evaluation at distinct Teichmueller points; decoding
interpolates a bivariate polynomial vanishing (with multiplicity) at the
received points, factors it, and reads message polynomials off the
Y-linear factors.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (DegreeTooLarge, FactorizationFailed, NoNonzeroSolution,
                     NoSquarefreeSpecialization, TooFewTerms)
from .hensel import factor_bivariate
from .poly import (BiPoly, SupportSet, UniPoly, binomial_table, quorem,
                   smith_solve_homogeneous)
from .ring import GaloisRingParams, RingElem

# kernel vectors tried before list decoding gives up on a received word
_MAX_KERNEL_RETRIES = 10


@dataclass(frozen=True)
class RSCode:
    """[n, k] evaluation code over GR(p^r, m) at distinct Teichmueller
    points; MDS with minimum Hamming distance n - k + 1."""

    params: GaloisRingParams
    n: int
    k: int
    alphas: tuple[RingElem, ...]


@dataclass(frozen=True)
class ListDecodeConfig:
    t: int
    e: int
    S: SupportSet


def rs_code(params: GaloisRingParams, n: int, k: int,
            alphas: Sequence[RingElem] | None = None) -> RSCode:
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if n > params.p**params.m:
        raise ValueError("length exceeds the number of Teichmueller points")
    if alphas is None:
        alphas = params.teichmuller_set()[:n]
    alphas = tuple(alphas)
    teich = set(e.idx for e in params.teichmuller_set())
    if len({a.idx for a in alphas}) != n or any(a.idx not in teich for a in alphas):
        raise ValueError("evaluation points must be distinct Teichmueller elements")
    return RSCode(params, n, k, alphas)


def rs_encode(code: RSCode, f: UniPoly) -> list[RingElem]:
    if f.degree >= code.k:
        raise DegreeTooLarge(f"deg f = {f.degree} >= k = {code.k}")
    return [f.eval(a) for a in code.alphas]


def hamming_distance(a: Sequence[RingElem], b: Sequence[RingElem]) -> int:
    return sum(1 for x, y in zip(a, b) if x != y)


def build_support(n: int, k: int, t: int, e: int = 1) -> SupportSet:
    """Monomial support {(i, j) : i + (k-1)j <= e(n-t) - 1}.

    The strict bound (the -1) is what makes the degree argument for the
    zero-forcing lemma airtight and reproduces the worked cardinalities
    65 and 198 for the [64, 6] code.
    """
    if t >= n:
        raise TooFewTerms("radius must be below the code length")
    if e < 1:
        raise ValueError("multiplicity must be >= 1")
    cap = e * (n - t) - 1
    if cap < 0:
        raise TooFewTerms("empty support set")
    bound = (e * (e + 1) // 2) * n
    if k >= 2:
        jmax = cap // (k - 1)
    else:
        # k = 1 puts no cap on j; cut the strip once the count bound is met
        jmax = bound // (cap + 1) + 1
    pairs = [(i, j) for j in range(jmax + 1)
             for i in range(cap - (k - 1) * j + 1)]
    S = SupportSet.from_iterable(pairs)
    if len(S) <= bound:
        raise TooFewTerms(f"|S| = {len(S)} <= {bound}: radius {t} infeasible")
    return S


def make_config(code: RSCode, t: int, e: int = 1) -> ListDecodeConfig:
    return ListDecodeConfig(t, e, build_support(code.n, code.k, t, e))


def _point_factor_table(params: GaloisRingParams, x: RingElem, e: int,
                        maxdeg: int) -> np.ndarray:
    """tab[a, i] = C(i, a) * x^(i-a) packed, zero where i < a."""
    binom = binomial_table(maxdeg, params.q)
    pows = [params.one()]
    for _ in range(maxdeg):
        pows.append(pows[-1] * x)
    tab = np.zeros((e, maxdeg + 1), dtype=np.int64)
    for a in range(e):
        for i in range(a, maxdeg + 1):
            c = binom[i][a]
            if c:
                tab[a, i] = params.mul_idx(params.int_elem(c).idx, pows[i - a].idx)
    return tab


def multiplicity_rows(params: GaloisRingParams, S: SupportSet, x: RingElem,
                      y: RingElem, e: int) -> list[np.ndarray]:
    """Rows forcing multiplicity e at (x, y): one row per (a, b), a+b < e.

    Entry at column (i, j) is C(i,a) C(j,b) x^(i-a) y^(j-b)."""
    cols = S.pairs
    maxi = max(i for i, _ in cols)
    maxj = max(j for _, j in cols)
    ti = _point_factor_table(params, x, e, maxi)
    tj = _point_factor_table(params, y, e, maxj)
    ci = np.array([i for i, _ in cols], dtype=np.int64)
    cj = np.array([j for _, j in cols], dtype=np.int64)
    kern = params.kernel()
    rows = []
    for a in range(e):
        for b in range(e - a):
            rows.append(kern.mul(ti[a][ci], tj[b][cj]))
    return rows


def multiplicity_rows_reversed(params: GaloisRingParams, S: SupportSet,
                               x: RingElem, e: int, d: int) -> list[np.ndarray]:
    """Multiplicity-e rows at (x, 0) for the Y-reversed polynomial
    (degree cap d): used for points whose interpolation value is
    infinity."""
    cols = S.pairs
    maxi = max(i for i, _ in cols)
    ti = _point_factor_table(params, x, e, maxi)
    ci = np.array([i for i, _ in cols], dtype=np.int64)
    cj = np.array([j for _, j in cols], dtype=np.int64)
    rows = []
    for a in range(e):
        for b in range(e - a):
            row = ti[a][ci].copy()
            row[cj != d - b] = 0
            rows.append(row)
    return rows


def _y_roots_field(Qbar: BiPoly, k: int, cap: int = 4096) -> list[UniPoly]:
    """All fbar over the residue field with deg < k and Qbar(X, fbar) = 0,
    by coefficientwise descent (substitute Y <- c + X*Y and strip X
    content).  Free tails (zero branch polynomials) are enumerated up to
    ``cap`` candidates."""
    field = Qbar.params
    out: list[UniPoly] = []
    elems = [field.elem(i) for i in range(field.size)]

    def strip_x(Q: BiPoly) -> BiPoly:
        if Q.is_zero:
            return Q
        v = min(i for i, _ in Q.terms)
        if v == 0:
            return Q
        res = BiPoly(field)
        res.terms = {(i - v, j): c for (i, j), c in Q.terms.items()}
        return res

    def rec(Q: BiPoly, prefix: list[RingElem]):
        depth = len(prefix)
        if Q.is_zero:
            if field.size ** (k - depth) > cap:
                return
            tails = [[]]
            for _ in range(k - depth):
                tails = [t + [c] for t in tails for c in elems]
            for t in tails:
                out.append(UniPoly(field, prefix + t))
            return
        if depth == k:
            if all(j != 0 for (_, j) in Q.terms):
                out.append(UniPoly(field, prefix))
            return
        univar = Q.specialize_x(field.zero())
        maxj = Q.degree_y()
        binom = binomial_table(maxj, field.q)
        for c in elems:
            if not univar.eval(c).is_zero:
                continue
            # substitute Y <- c + X*Y: (c + XY)^j expands binomially
            terms: dict[tuple[int, int], RingElem] = {}
            cpows = [field.one()]
            for _ in range(maxj):
                cpows.append(cpows[-1] * c)
            for (i, j), coef in Q.terms.items():
                for b in range(j + 1):
                    bc = binom[j][b]
                    if bc == 0:
                        continue
                    val = field.int_elem(bc) * cpows[j - b] * coef
                    if val.is_zero:
                        continue
                    key = (i + b, b)
                    cur = terms.get(key)
                    val = val if cur is None else cur + val
                    if val.is_zero:
                        terms.pop(key, None)
                    else:
                        terms[key] = val
            sub = BiPoly(field)
            sub.terms = terms
            rec(strip_x(sub), prefix + [c])

    rec(strip_x(Qbar), [])
    dedup = {tuple(c.idx for c in f.coeffs): f for f in out}
    return [dedup[key] for key in sorted(dedup)]


def _bipoly_eval_y(Q: BiPoly, f: UniPoly) -> UniPoly:
    """Q(X, f(X)) as a univariate polynomial in X."""
    cols = Q.y_coeff_polys()
    acc = UniPoly.zero(Q.params)
    for c in reversed(cols):
        acc = acc * f + c
    return acc


def _bipoly_dy(Q: BiPoly) -> BiPoly:
    """Formal derivative in Y."""
    from .poly import int_multiple

    out = BiPoly(Q.params)
    terms = {}
    for (i, j), c in Q.terms.items():
        if j == 0:
            continue
        v = int_multiple(c, j)
        if not v.is_zero:
            terms[(i, j - 1)] = v
    out.terms = terms
    return out


def _y_roots_ring(Q: BiPoly, k: int, cap: int = 4096) -> list[UniPoly]:
    """All f over GR(p^r, m) with deg < k and Q(X, f) = 0: residue-field
    roots lifted level by level (free levels enumerated up to cap)."""
    params = Q.params
    field = params.residue_field()
    from .hensel import mu_poly as _mu

    Qbar = BiPoly(field, {key: c.mu() for key, c in Q.terms.items()})
    Qy = _bipoly_dy(Q)

    def embed(fbar: UniPoly) -> UniPoly:
        return UniPoly(params, [params.elem(params.lift_idx(c.idx))
                                for c in fbar.coeffs])

    cands = [embed(fb) for fb in _y_roots_field(Qbar, k, cap)]
    for j in range(1, params.r):
        pj = params.p**j
        nxt = []
        for f in cands:
            val = _bipoly_eval_y(Q, f)
            if any(params.val_idx(c.idx) < j for c in val.coeffs):
                continue
            A = UniPoly(field, [c.pdiv(j).mu() for c in val.coeffs])
            B = _mu(_bipoly_eval_y(Qy, f))
            if B.is_zero:
                if not A.is_zero:
                    continue
                if field.size**k > cap:
                    continue
                gs = [[]]
                for _ in range(k):
                    gs = [t + [field.elem(i)] for t in gs
                          for i in range(field.size)]
                for t in gs:
                    g = embed(UniPoly(field, t))
                    nxt.append(f + g.scale(params.int_elem(pj)))
            else:
                q, rem = quorem(-A, B.monic())
                if not rem.is_zero:
                    continue
                g = q.scale(B.lc().inv())
                if g.degree >= k:
                    continue
                nxt.append(f + embed(g).scale(params.int_elem(pj)))
        seen = {}
        for f in nxt:
            seen[tuple(c.idx for c in f.coeffs)] = f
        cands = [seen[key] for key in sorted(seen)]
    return [f for f in cands if _bipoly_eval_y(Q, f).is_zero]


def interpolate(code: RSCode, y: Sequence[RingElem], cfg: ListDecodeConfig,
                free_index: int = 0) -> BiPoly:
    """Nonzero Q supported on S vanishing with multiplicity e at every
    received point, from the kernel of the constraint system."""
    params = code.params
    if len(y) != code.n:
        raise ValueError("received word has the wrong length")
    rows = []
    for alpha, yi in zip(code.alphas, y):
        rows.extend(multiplicity_rows(params, cfg.S, alpha, yi, cfg.e))
    M = np.vstack(rows)
    v = smith_solve_homogeneous(params, M, free_index=free_index)
    terms = {pair: c for pair, c in zip(cfg.S.pairs, v) if not c.is_zero}
    Q = BiPoly(params, terms)
    if cfg.e == 1:
        assert all(Q.eval(a, yi).is_zero for a, yi in zip(code.alphas, y))
    return Q


def list_decode(code: RSCode, y: Sequence[RingElem], cfg: ListDecodeConfig,
                seed: int = 0) -> list[tuple[UniPoly, list[RingElem], int]]:
    """All message polynomials within Hamming distance t of y.

    Interpolation, bivariate factorization with main variable Y, then a
    distance filter; factors that are not monic-able in Y (nonunit or
    nonconstant leading Y-coefficient) cannot encode messages and are
    discarded.
    """
    params = code.params
    candidates: list[UniPoly] = []
    fl = None
    Q0 = None
    for fi in range(_MAX_KERNEL_RETRIES):
        try:
            Q = interpolate(code, y, cfg, free_index=fi)
        except NoNonzeroSolution:
            break
        if Q0 is None:
            Q0 = Q
        try:
            fl = factor_bivariate(Q, main="y", seed=seed)
            break
        except (NoSquarefreeSpecialization, FactorizationFailed):
            continue
    if fl is not None:
        for fac, _ in fl.factors:
            if fac.degree_y() != 1:
                continue
            ycols = fac.y_coeff_polys()
            b, a = ycols[1], -ycols[0]
            if b.degree != 0 or not b.coeffs[0].is_unit:
                continue
            candidates.append(a.scale(b.coeffs[0].inv()))
    elif Q0 is not None:
        # every kernel vector resisted factorization (repeated factors are
        # the usual culprit); fall back to direct Y-root extraction
        candidates.extend(_y_roots_ring(Q0, code.k))
    else:
        raise FactorizationFailed("interpolation produced no usable kernel vector")

    found: dict[tuple, tuple[UniPoly, list[RingElem], int]] = {}
    for f in candidates:
        if f.degree >= code.k:
            continue
        cw = rs_encode(code, f)
        dist = hamming_distance(cw, y)
        if dist > cfg.t:
            continue
        found[tuple(c.idx for c in f.coeffs)] = (f, cw, dist)
    return [found[key] for key in sorted(found)]
