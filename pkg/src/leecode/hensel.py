"""Hensel lifting and bivariate polynomial factorization over Galois rings.

The basic step lifts a Bezout-coprime factorization from one quotient
level to the next (p-adic levels GR(p^j, m), or W-adic precision levels
R[[W]]/(W^j) for the bivariate second stage).  Factoring a bivariate
polynomial runs the classic two-level scheme: factor the specialized
polynomial over the residue field, lift to the ring, lift again in the
specialization parameter, then recombine lifted factors by exact trial
division.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence

from .errors import (FactorizationFailed, NoSquarefreeSpecialization,
                     NotSquareFree, PreconditionViolated)
from .poly import (BiPoly, UniPoly, bezout_coprime, binomial_table, exact_div,
                   poly_gcd, pow_mod, quorem)
from .ring import GaloisRingParams, RingElem
from .series import SeriesRing, TruncSeries


@dataclass(frozen=True)
class HenselQuad:
    """Factor pair plus its Bezout certificate: s*g + t*h = 1, h monic."""

    g: UniPoly
    h: UniPoly
    s: UniPoly
    t: UniPoly


@dataclass(frozen=True)
class FactorList:
    """unit * prod(factor^mult) reproduces the factored input exactly.

    Univariate: unit is a RingElem, factors are monic UniPoly values.
    Bivariate: unit is a BiPoly constant in the main variable; factors
    are BiPoly values.
    """

    unit: object
    factors: tuple

    def expand_uni(self) -> UniPoly:
        f, _ = self.factors[0] if self.factors else (None, None)
        dom = f.dom if f is not None else None
        if dom is None:
            raise ValueError("cannot expand an empty univariate factor list")
        acc = UniPoly(dom, (self.unit,))
        for g, mult in self.factors:
            for _ in range(mult):
                acc = acc * g
        return acc

    def expand_bi(self) -> BiPoly:
        acc = self.unit
        for g, mult in self.factors:
            for _ in range(mult):
                acc = acc * g
        return acc


@dataclass(frozen=True)
class LiftLevel:
    """Coefficient maps between two quotient levels of a lifting chain."""

    up: Callable[[UniPoly], UniPoly]
    down: Callable[[UniPoly], UniPoly]


def _map_poly(f: UniPoly, src: GaloisRingParams, dst: GaloisRingParams) -> UniPoly:
    """Digitwise coefficient transport between GR(p^j, m) levels."""
    if not f.coeffs:
        return UniPoly.zero(dst)
    arr = src.pack(f.coeffs)
    digits = src.kernel().codec.unpack(arr) % dst.q
    return UniPoly(dst, dst.unpack(dst.kernel().codec.pack(digits)))


def padic_level(src: GaloisRingParams, dst: GaloisRingParams) -> LiftLevel:
    return LiftLevel(up=lambda f: _map_poly(f, src, dst),
                     down=lambda f: _map_poly(f, dst, src))


def series_level(params: GaloisRingParams, lo: int, hi: int) -> LiftLevel:
    lo_ring = SeriesRing(params, lo)
    hi_ring = SeriesRing(params, hi)

    def up(f: UniPoly) -> UniPoly:
        return UniPoly(hi_ring, [c.padded(hi) for c in f.coeffs])

    def down(f: UniPoly) -> UniPoly:
        return UniPoly(lo_ring, [c.truncated(lo) for c in f.coeffs])

    return LiftLevel(up=up, down=down)


def _hensel_step_level(fstar: UniPoly, quad: HenselQuad, level: LiftLevel,
                       check: bool = True) -> HenselQuad:
    if check:
        if quad.h.is_zero or not quad.h.is_monic:
            raise PreconditionViolated("h is not monic")
        low = level.down(fstar)
        if not (low - quad.g * quad.h).is_zero:
            raise PreconditionViolated("fstar != g*h at the lower level")
        lowdom = quad.g.dom
        if not (quad.s * quad.g + quad.t * quad.h - UniPoly.one(lowdom)).is_zero:
            raise PreconditionViolated("s*g + t*h != 1 at the lower level")
    g = level.up(quad.g)
    h = level.up(quad.h)
    s = level.up(quad.s)
    t = level.up(quad.t)
    dom = fstar.dom
    one = UniPoly.one(dom)
    e = fstar - g * h
    q, r = quorem(s * e, h)
    gs = g + t * e + q * g
    hs = h + r
    b = s * gs + t * hs - one
    c, d = quorem(s * b, hs)
    ss = s - d
    ts = t - t * b - c * gs
    return HenselQuad(gs, hs, ss, ts)


def hensel_step(fstar: UniPoly, quad: HenselQuad) -> HenselQuad:
    """One p-adic Hensel step.

    ``quad`` lives over GR(p^j, m) and ``fstar`` over GR(p^J, m) for the
    same (p, m) with j < J <= 2j; returns the lifted quad over fstar's
    ring with the product and Bezout identities holding there exactly.
    """
    src: GaloisRingParams = quad.g.dom
    dst: GaloisRingParams = fstar.dom
    if (src.p, src.m) != (dst.p, dst.m) or not src.r < dst.r <= 2 * src.r:
        raise PreconditionViolated("levels are not a valid Hensel pair")
    return _hensel_step_level(fstar, quad, padic_level(src, dst))


def _padic_chain(params: GaloisRingParams):
    """(src, dst) level pairs from the residue field up to params."""
    def at(j: int) -> GaloisRingParams:
        return params if j == params.r else params.reduced_to(j)

    j = 1
    while j < params.r:
        hi = min(2 * j, params.r)
        yield at(j), at(hi)
        j = hi


def mu_poly(f: UniPoly) -> UniPoly:
    """Coefficientwise canonical map onto the residue field."""
    params: GaloisRingParams = f.dom
    fld = params.residue_field()
    return UniPoly(fld, [c.mu() for c in f.coeffs])


def lift_defining_polynomial(fbar: UniPoly, p: int, r: int) -> tuple[int, ...]:
    """Hensel lift of a primitive degree-m polynomial to Z_{p^r}.

    Lifts the factorization X^(p^m - 1) - 1 = cofactor * fbar from Z_p
    through the doubling chain of Z_{p^j} levels; returns the digit
    tuple of the lifted monic factor.
    """
    from .ring import construct_galois_ring

    fld: GaloisRingParams = fbar.dom
    m = fbar.degree
    n = p**m - 1

    def cyclo(params: GaloisRingParams) -> UniPoly:
        coeffs = [params.zero()] * (n + 1)
        coeffs[0] = -params.one()
        coeffs[n] = params.one()
        return UniPoly(params, coeffs)

    cof = exact_div(cyclo(fld), fbar)
    s, t = bezout_coprime(cof, fbar)
    quad = HenselQuad(cof, fbar, s, t)
    j = 1
    while j < r:
        hi = min(2 * j, r)
        dst = construct_galois_ring(p, hi, 1)
        src = quad.g.dom
        quad = _hensel_step_level(cyclo(dst), quad, padic_level(src, dst))
        j = hi
    return tuple(c.idx for c in quad.h.coeffs)


# ---------------------------------------------------------------------------
# factorization over the residue field

def _sorted_factors(factors):
    return tuple(sorted(factors,
                        key=lambda fm: (fm[0].degree,
                                        tuple(c.idx for c in fm[0].coeffs),
                                        fm[1])))


def field_factor(f: UniPoly, seed: int = 0) -> FactorList:
    """Complete factorization into monic irreducibles over GR(p, m).

    Square-free decomposition, then distinct-degree splitting, then
    seeded Cantor-Zassenhaus equal-degree splitting.
    """
    field: GaloisRingParams = f.dom
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    unit = f.lc()
    fm = f.monic()
    out: list[tuple[UniPoly, int]] = []
    for part, mult in _squarefree_parts(fm):
        for d, prod in _distinct_degree(part):
            for irr in _equal_degree(prod, d, rng):
                out.append((irr, mult))
    return FactorList(unit=unit, factors=_sorted_factors(out))


def _pth_root(f: UniPoly) -> UniPoly:
    field: GaloisRingParams = f.dom
    p, m = field.p, field.m
    coeffs = []
    for i in range(0, f.degree + 1, p):
        coeffs.append(f.coeff(i) ** (p ** (m - 1) if m > 1 else 1))
    return UniPoly(field, coeffs)


def _squarefree_parts(f: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic square-free parts with multiplicities (char-p aware)."""
    field: GaloisRingParams = f.dom
    p = field.p
    if f.degree == 0:
        return []
    out: dict[int, UniPoly] = {}

    def merge(g: UniPoly, mult: int):
        if g.degree > 0:
            cur = out.get(mult)
            out[mult] = g if cur is None else cur * g

    fp = f.deriv()
    if fp.is_zero:
        for g, mult in _squarefree_parts(_pth_root(f)):
            merge(g, mult * p)
        return [(g, m) for m, g in sorted(out.items())]
    c = poly_gcd(f, fp)
    w = exact_div(f, c)
    i = 1
    while w.degree > 0:
        y = poly_gcd(w, c)
        z = exact_div(w, y)
        merge(z, i)
        w = y
        c = exact_div(c, y)
        i += 1
    if c.degree > 0:
        for g, mult in _squarefree_parts(_pth_root(c)):
            merge(g, mult * p)
    return [(g, m) for m, g in sorted(out.items())]


def _distinct_degree(f: UniPoly) -> list[tuple[int, UniPoly]]:
    """(degree d, product of all monic irreducible factors of degree d)."""
    field: GaloisRingParams = f.dom
    Q = field.size
    out = []
    x = UniPoly.x(field)
    h = quorem(x, f)[1]
    rest = f
    d = 0
    while rest.degree > 2 * (d + 1) - 1:
        d += 1
        h = pow_mod(h, Q, rest)
        g = poly_gcd(h - x, rest)
        if g.degree > 0:
            out.append((d, g))
            rest = exact_div(rest, g)
            h = quorem(h, rest)[1] if rest.degree > 0 else h
    if rest.degree > 0:
        out.append((rest.degree, rest))
    return out


def _equal_degree(f: UniPoly, d: int, rng: random.Random) -> list[UniPoly]:
    """Cantor-Zassenhaus split of a product of degree-d irreducibles."""
    field: GaloisRingParams = f.dom
    if f.degree == d:
        return [f]
    Q = field.size
    n = f.degree
    while True:
        u = UniPoly(field, [field.elem(rng.randrange(field.size))
                            for _ in range(n)])
        if u.degree < 1:
            continue
        if field.p == 2:
            # absolute trace of u in F_{2^(m*d)} splits the roots
            tr = u
            acc = u
            for _ in range(field.m * d - 1):
                acc = pow_mod(acc, 2, f)
                tr = tr + acc
            g = poly_gcd(tr, f)
        else:
            w = pow_mod(u, (Q**d - 1) // 2, f) - UniPoly.one(field)
            g = poly_gcd(w, f)
        if 0 < g.degree < n:
            left = _equal_degree(g, d, rng)
            right = _equal_degree(exact_div(f, g), d, rng)
            return left + right


# ---------------------------------------------------------------------------
# multifactor lifting

def _tree_lift(f_ring: UniPoly, gs: Sequence[UniPoly],
               f_ser: UniPoly | None, ser_levels) -> list:
    """Recursive balanced-tree lifting.

    ``f_ring`` is monic over GR(p^r, m) with mu(f_ring) = prod(gs); when
    ``f_ser`` is given it is the same polynomial viewed over the series
    ring, monic, and every node is additionally lifted through the
    W-adic precision chain.  Returns (ring factor, series factor | None)
    leaves in the order of gs.
    """
    params: GaloisRingParams = f_ring.dom
    if len(gs) == 1:
        return [(f_ring, f_ser)]
    mid = len(gs) // 2
    gl = gs[0]
    for g in gs[1:mid]:
        gl = gl * g
    gr = gs[mid]
    for g in gs[mid + 1 :]:
        gr = gr * g
    s, t = bezout_coprime(gl, gr)
    quad = HenselQuad(gl, gr, s, t)
    for src, dst in _padic_chain(params):
        quad = _hensel_step_level(_map_poly(f_ring, params, dst)
                                  if dst is not params else f_ring,
                                  quad, padic_level(src, dst))
    g_r, h_r = quad.g, quad.h
    assert g_r.is_monic and h_r.is_monic

    g_s = h_s = None
    if f_ser is not None:
        ring1 = SeriesRing(params, 1)
        embed = lambda fp: UniPoly(ring1, [ring1.from_scalar(c) for c in fp.coeffs])
        squad = HenselQuad(embed(quad.g), embed(quad.h),
                           embed(quad.s), embed(quad.t))
        for lo, hi in ser_levels:
            level = series_level(params, lo, hi)
            target = UniPoly(SeriesRing(params, hi),
                             [c.truncated(hi) for c in f_ser.coeffs])
            squad = _hensel_step_level(target, squad, level)
        g_s, h_s = squad.g, squad.h

    left = _tree_lift(g_r, gs[:mid], g_s, ser_levels)
    right = _tree_lift(h_r, gs[mid:], h_s, ser_levels)
    return left + right


def multifactor_lift(fstar: UniPoly, field_factors: FactorList) -> FactorList:
    """Lift a square-free residue-field factorization to GR(p^r, m)."""
    params: GaloisRingParams = fstar.dom
    gs = []
    seen = set()
    for g, mult in field_factors.factors:
        if mult != 1:
            raise NotSquareFree("repeated factor in the field factorization")
        key = tuple(c.idx for c in g.coeffs)
        if key in seen:
            raise NotSquareFree("duplicate factor in the field factorization")
        seen.add(key)
        gs.append(g)
    c = fstar.lc()
    if not c.is_unit:
        raise PreconditionViolated("leading coefficient must be a unit")
    fmonic = fstar.scale(c.inv())
    if not gs:
        return FactorList(unit=c, factors=())
    prod = gs[0]
    for g in gs[1:]:
        prod = prod * g
    if mu_poly(fmonic) != prod:
        raise PreconditionViolated("field factors do not multiply to mu(fstar)")
    leaves = _tree_lift(fmonic, gs, None, ())
    lifted = tuple((fr, 1) for fr, _ in leaves)
    assert FactorList(unit=c, factors=lifted).expand_uni() == fstar
    for (fr, _), g in zip(lifted, gs):
        assert mu_poly(fr) == g
    return FactorList(unit=c, factors=lifted)


# ---------------------------------------------------------------------------
# bivariate factorization

def _series_levels(ell: int):
    out = []
    j = 1
    while j < ell:
        hi = min(2 * j, ell)
        out.append((j, hi))
        j = hi
    return out


def _taylor_shift_uni(f: UniPoly, c: RingElem) -> UniPoly:
    """f(X + c) by binomial expansion."""
    params: GaloisRingParams = f.dom
    if f.is_zero:
        return f
    n = f.degree
    binom = binomial_table(n, params.q)
    pows = [params.one()]
    for _ in range(n):
        pows.append(pows[-1] * c)
    out = [params.zero()] * (n + 1)
    for i, ci in enumerate(f.coeffs):
        if ci.is_zero:
            continue
        for a in range(i + 1):
            cb = binom[i][a]
            if cb:
                out[a] = out[a] + params.int_elem(cb) * pows[i - a] * ci
    return UniPoly(params, out)


def _series_poly_to_bipoly(F: UniPoly, u: RingElem) -> BiPoly:
    """UniPoly in Y over R[[W]]/(W^ell), W = X - u, back to a BiPoly in X, Y."""
    params = u.params
    cols = []
    for c in F.coeffs:
        cols.append(UniPoly(params, c.coeff_elems()))
    shifted = [_taylor_shift_uni(col, -u) for col in cols]
    return BiPoly.from_y_coeff_polys(params, shifted)


def bipoly_exact_div_y(Q: BiPoly, D: BiPoly) -> BiPoly | None:
    """Exact division by a divisor monic in Y; None when not exact."""
    params = Q.params
    qc = Q.y_coeff_polys()
    dc = D.y_coeff_polys()
    dyq, dyd = len(qc) - 1, len(dc) - 1
    if dyd > dyq or dyd < 0:
        return None
    if not (dc[-1].degree == 0 and dc[-1].coeffs[0] == params.one()):
        return None
    work = list(qc)
    quo = [UniPoly.zero(params)] * (dyq - dyd + 1)
    for k in range(dyq, dyd - 1, -1):
        c = work[k]
        quo[k - dyd] = c
        if not c.is_zero:
            for j in range(dyd):
                work[k - dyd + j] = work[k - dyd + j] - c * dc[j]
        work[k] = UniPoly.zero(params)
    if any(not w.is_zero for w in work[:dyd]):
        return None
    return BiPoly.from_y_coeff_polys(params, quo)


def bipoly_div_linear_y(Q: BiPoly, a: UniPoly, b: UniPoly) -> BiPoly | None:
    """Exact division of Q by b(X)*Y - a(X); None when not exact.

    Needs a unit leading coefficient on b so the coefficient divisions
    are well-defined over the chain ring.
    """
    params = Q.params
    if b.is_zero or not b.lc().is_unit:
        return None
    qc = Q.y_coeff_polys()
    dyq = len(qc) - 1
    if dyq < 1:
        return None
    E: list[UniPoly] = [UniPoly.zero(params)] * dyq
    binv = b.lc().inv()
    for k in range(dyq, 0, -1):
        # b*E[k-1] = qc[k] + a*E[k]
        rhs = qc[k] + (a * E[k] if k < dyq else UniPoly.zero(params))
        q, r = quorem(rhs, b.monic())
        if not r.is_zero:
            return None
        E[k - 1] = q.scale(binv)
    if not (qc[0] + a * E[0]).is_zero:
        return None
    return BiPoly.from_y_coeff_polys(params, E)


def _reconstruct_linear(remaining: BiPoly, rho: TruncSeries, u: RingElem,
                        ell: int) -> tuple[BiPoly, BiPoly] | None:
    """Recover a non-monic factor b*Y - a from a lifted root series.

    The lifted singleton factor is Y - rho with rho = a/b as a series in
    W = X - u; minimal (b, a) with rho*b = a mod W^ell come out of the
    key-equation solver, and exact trial division arbitrates.
    """
    from .keysolver import bf_solve

    params = remaining.params
    rho_poly = UniPoly(params, rho.coeff_elems())
    basis = bf_solve(rho_poly, ell)
    for elt in basis.elements:
        bw, aw = elt.f, elt.g
        if bw.is_zero or not bw.lc().is_unit:
            continue
        a = _taylor_shift_uni(aw, -u)
        b = _taylor_shift_uni(bw, -u)
        quo = bipoly_div_linear_y(remaining, a, b)
        if quo is not None:
            terms = {(i, 1): c for i, c in enumerate(b.coeffs) if not c.is_zero}
            for i, c in enumerate(a.coeffs):
                if not c.is_zero:
                    terms[(i, 0)] = -c
            fac = BiPoly(params)
            fac.terms = terms
            return fac, quo
    return None


def _content_val(Q: BiPoly) -> int:
    params = Q.params
    return min((params.val_idx(c.idx) for c in Q.terms.values()),
               default=params.r)


def factor_bivariate(Q: BiPoly, main: str = "y", seed: int = 0) -> FactorList:
    """Factor a bivariate polynomial over GR(p^r, m).

    ``main`` selects the variable the factors should be (mostly) monic
    in; the other variable is specialized at Teichmueller points,
    scanned deterministically starting at 0.  The product of unit and
    factors always reproduces Q exactly; a final non-monic remainder
    that the combine search cannot split is returned as a single factor.
    """
    params: GaloisRingParams = Q.params
    if Q.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    if main not in ("x", "y"):
        raise ValueError("main must be 'x' or 'y'")
    if main == "x":
        res = factor_bivariate(Q.swap_vars(), "y", seed)
        return FactorList(unit=res.unit.swap_vars(),
                          factors=tuple((f.swap_vars(), m)
                                        for f, m in res.factors))

    cval = _content_val(Q)
    content = params.int_elem(params.p**cval)
    work = BiPoly(params)
    work.terms = {k: c.pdiv(cval) for k, c in Q.terms.items()} if cval else dict(Q.terms)

    dy = work.degree_y()
    if dy <= 0:
        unit = work.scale(content) if cval else work
        out = FactorList(unit=unit, factors=())
        assert out.expand_bi() == Q
        return out

    lcpoly = work.y_coeff_polys()[dy]
    fld = params.residue_field()

    chosen = None
    for u in params.teichmuller_set():
        lcu = lcpoly.eval(u)
        if not lcu.is_unit:
            continue
        Qu = work.specialize_x(u)
        fbar = mu_poly(Qu.scale(lcu.inv()))
        if fbar.degree != dy:
            continue
        d = fbar.deriv()
        if d.is_zero:
            continue
        if poly_gcd(fbar, d).degree == 0:
            chosen = (u, lcu, Qu, fbar)
            break
    if chosen is None:
        raise NoSquarefreeSpecialization(
            "no Teichmueller point gives a square-free unit-leading specialization")
    u, lcu, Qu, fbar = chosen

    ffl = field_factor(fbar, seed=seed)
    gs = [g for g, _ in ffl.factors]

    ell = work.degree_x() + 1
    sring = SeriesRing(params, ell)
    shifted = shift_bi_x(work, u)
    ycols = shifted.y_coeff_polys()
    ser_coeffs = [sring.from_coeffs(list(col.coeffs)) for col in ycols]
    f_ser = UniPoly(sring, ser_coeffs)
    Cinv = ser_coeffs[dy].inv()
    f_ser_monic = f_ser.scale(Cinv)

    qum = Qu.scale(lcu.inv())
    leaves = _tree_lift(qum, gs, f_ser_monic, _series_levels(ell))

    pool = [leaf_ser for _, leaf_ser in leaves]
    remaining = work
    accepted: list[BiPoly] = []
    while pool and remaining.degree_y() > 0:
        found = None
        for size in range(1, len(pool) + 1):
            for subset in combinations(range(len(pool)), size):
                cand = pool[subset[0]]
                for i in subset[1:]:
                    cand = cand * pool[i]
                candB = _series_poly_to_bipoly(cand, u)
                quo = bipoly_exact_div_y(remaining, candB)
                if quo is not None:
                    found = (subset, candB, quo)
                    break
                if size == 1 and cand.degree == 1:
                    rec = _reconstruct_linear(remaining, -cand.coeffs[0], u, ell)
                    if rec is not None:
                        found = (subset, rec[0], rec[1])
                        break
            if found:
                break
        if found is None:
            break
        subset, fac, quo = found
        accepted.append(fac)
        remaining = quo
        pool = [f for i, f in enumerate(pool) if i not in subset]

    if remaining.degree_y() > 0:
        accepted.append(remaining)
        remaining = BiPoly.constant(params, params.one())

    unit = remaining.scale(content) if cval else remaining
    out = FactorList(unit=unit, factors=tuple((f, 1) for f in accepted))
    assert out.expand_bi() == Q, "factor product identity failed"
    return out


def shift_bi_x(Q: BiPoly, u: RingElem) -> BiPoly:
    """Q(W + u, Y): rewrite in the shifted parameter W = X - u."""
    params = Q.params
    cols = Q.y_coeff_polys()
    return BiPoly.from_y_coeff_polys(params,
                                     [_taylor_shift_uni(col, u) for col in cols])
