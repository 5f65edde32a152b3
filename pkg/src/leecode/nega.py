"""Quaternary negacyclic codes under the Lee metric.

Covers code construction from roots, encoding, syndrome and key-equation
data, algebraic unique decoding through the Groebner-basis solver, and
the rational-interpolation list decoder (with the residue-field
reduction pass that strips magnitude-2 errors).

Conventions.  The code of length n (odd) lives in Z4[X]/(X^n + 1) and is
cut out by roots alpha^(2i-1), i = 1..t, where alpha = -beta has order
2n in GR(4, m), n | 2^m - 1.  An error digit e_i contributes the locator
factor 1 - alpha^i Z (magnitude 1), its square (magnitude 2), or
1 + alpha^i Z (magnitude 3): the roots of the locator then sit at
alpha^(-i) for magnitudes 1 and 2 (a magnitude-2 error additionally
kills -alpha^(-i), since 2^2 = 0) and at -alpha^(-i) for magnitude 3,
which is exactly the reading the key-equation round trip reproduces.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (DecodingFailure, DegreeTooLarge, FactorizationFailed,
                     NoNonzeroSolution, NoSquarefreeSpecialization,
                     OddCoefficientNonzero, RadiusInfeasible, RootOrderFailure)
from .hensel import factor_bivariate, mu_poly
from .keysolver import GroebnerBasis, PairPoly, bf_solve
from .poly import (BiPoly, SupportSet, UniPoly, quorem,
                   smith_solve_homogeneous)
from .ring import GaloisRingParams, RingElem, construct_galois_ring, prime_factors
from .rs import multiplicity_rows, multiplicity_rows_reversed

_LEE_LUT = np.array([0, 1, 2, 1], dtype=np.int64)

# kernel vectors tried per basis pair before a Wu decode gives up
_WU_KERNEL_RETRIES = 4


def lee_weight(v) -> int:
    """Sum of min(x, 4 - x) over the digits."""
    return int(_LEE_LUT[np.asarray(v, dtype=np.int64) % 4].sum())


def lee_distance(v, w) -> int:
    a = np.asarray(v, dtype=np.int64)
    b = np.asarray(w, dtype=np.int64)
    return lee_weight((a - b) % 4)


@dataclass(eq=False)
class NegaCode:
    """Negacyclic code descriptor; build with :func:`nega_construct`."""

    n: int
    t: int
    m: int
    params: GaloisRingParams
    beta: RingElem
    alpha: RingElem
    gen: np.ndarray
    k: int
    _alpha_pows: tuple[RingElem, ...] = field(default=None, repr=False)

    def alpha_pows(self) -> tuple[RingElem, ...]:
        if self._alpha_pows is None:
            pows = [self.params.one()]
            for _ in range(2 * self.n - 1):
                pows.append(pows[-1] * self.alpha)
            object.__setattr__(self, "_alpha_pows", tuple(pows))
        return self._alpha_pows


@functools.lru_cache(maxsize=None)
def nega_construct(n: int, t: int) -> NegaCode:
    """Build the length-n code with roots alpha, alpha^3, ..., alpha^(2t-1).

    The generator polynomial is assembled from the Frobenius orbits of
    the required root exponents (computed on the order-n cyclic side via
    the isometry X -> -X, where conjugation is plain doubling mod n).
    """
    if n <= 1 or n % 2 == 0:
        raise ValueError("length must be odd and > 1")
    if t < 1 or 2 * t - 1 >= 2 * n:
        raise ValueError("need 1 <= t with 2t - 1 < 2n")
    m = 1
    while pow(2, m, n) != 1:
        m += 1
    params = construct_galois_ring(2, 2, m)
    beta = params.theta() ** ((2**m - 1) // n)
    if beta**n != params.one() or any(beta ** (n // ell) == params.one()
                                      for ell in prime_factors(n)):
        raise RootOrderFailure("beta does not have order n")
    alpha = -beta

    needed = sorted({(2 * i - 1) % n for i in range(1, t + 1)})
    seen: set[int] = set()
    exps: list[int] = []
    for e0 in needed:
        if e0 in seen:
            continue
        e = e0
        while e not in seen:
            seen.add(e)
            exps.append(e)
            e = (2 * e) % n
    exps.sort()

    gen_cyc = UniPoly.one(params)
    for e in exps:
        root = beta**e
        gen_cyc = gen_cyc * UniPoly(params, [-root, params.one()])
    d = gen_cyc.degree
    gen = np.zeros(d + 1, dtype=np.int64)
    for i, c in enumerate(gen_cyc.coeffs):
        digits = c.coeffs()
        assert all(x == 0 for x in digits[1:]), "orbit product left the base ring"
        # substitute X -> -X and normalize the sign to keep gen monic
        gen[i] = (digits[0] if (d - i) % 2 == 0 else (-digits[0]) % 4)
    code = NegaCode(n, t, m, params, beta, alpha, gen, n - d)
    for i in range(1, t + 1):
        assert _eval_z4_poly(code, gen, 2 * i - 1).is_zero
    return code


def _eval_z4_poly(code: NegaCode, coeffs: np.ndarray, alpha_exp: int) -> RingElem:
    """Evaluate a Z4 coefficient vector at alpha^alpha_exp."""
    params = code.params
    x = code.alpha_pows()[alpha_exp % (2 * code.n)]
    acc = params.zero()
    for c in reversed(coeffs.tolist()):
        acc = acc * x + params.int_elem(int(c))
    return acc


def nega_encode(code: NegaCode, msg) -> np.ndarray:
    """Codeword of msg (coefficients over Z4, degree < k): msg * gen
    reduced mod X^n + 1."""
    if isinstance(msg, UniPoly):
        coeffs = [c.coeffs()[0] for c in msg.coeffs]
    else:
        coeffs = [int(c) % 4 for c in msg]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) > code.k:
        raise DegreeTooLarge(f"message degree {len(coeffs) - 1} >= k = {code.k}")
    out = np.zeros(code.n, dtype=np.int64)
    conv = np.convolve(np.array(coeffs + [0], dtype=np.int64), code.gen)
    for i, c in enumerate(conv):
        if i < code.n:
            out[i] += c
        else:
            out[i - code.n] -= c  # X^n = -1
    return out % 4


def negacyclic_shift(word) -> np.ndarray:
    v = np.asarray(word, dtype=np.int64) % 4
    out = np.empty_like(v)
    out[0] = (-v[-1]) % 4
    out[1:] = v[:-1]
    return out


def syndromes(code: NegaCode, y) -> UniPoly:
    """Odd syndrome polynomial: coefficient y(alpha^(2i-1)) at Z^(2i-1)."""
    params = code.params
    y = np.asarray(y, dtype=np.int64) % 4
    if len(y) != code.n:
        raise ValueError("word length mismatch")
    coeffs = [params.zero()] * (2 * code.t)
    for i in range(1, code.t + 1):
        coeffs[2 * i - 1] = _eval_z4_poly(code, y, 2 * i - 1)
    return UniPoly(params, coeffs)


def error_locator(e, code: NegaCode) -> UniPoly:
    """prod over error positions of (1 - X_i Z)^w(e_i).

    The factor is 1 - alpha^i Z for e_i = 1, its square for e_i = 2 and
    1 + alpha^i Z for e_i = 3, so the locator's roots sit at alpha^(-i)
    (magnitudes 1, 2) and -alpha^(-i) = alpha^(n-i) (magnitude 3); this
    is the reading the key-equation round trip singles out.
    """
    params = code.params
    e = np.asarray(e, dtype=np.int64) % 4
    sigma = UniPoly.one(params)
    pows = code.alpha_pows()
    for i, ei in enumerate(e.tolist()):
        if ei == 0:
            continue
        x = pows[i]
        if ei == 3:
            x = -x
        factor = UniPoly(params, [params.one(), -x])
        sigma = sigma * factor
        if ei == 2:
            sigma = sigma * factor
    return sigma


def derive_u(s: UniPoly, t: int) -> UniPoly:
    """The odd polynomial u with s(u^2 - 1) = Z u' coefficientwise up to
    degree 2t - 1; solvable because every odd integer is a unit."""
    params: GaloisRingParams = s.dom
    u_coeffs = [params.zero()] * (2 * t)
    for i in range(1, t + 1):
        d = 2 * i - 1
        u = UniPoly(params, u_coeffs)
        usq = u * u
        rhs = -s.coeff(d)
        for b in range(2, d, 2):
            rhs = rhs + s.coeff(d - b) * usq.coeff(b)
        u_coeffs[d] = rhs * params.int_elem(d).inv()
    return UniPoly(params, u_coeffs)


def derive_T(u: UniPoly, t: int) -> UniPoly:
    """T with (1 + T(Z^2))(1 + Z u) = 1 mod Z^(2t+2); T has degree <= t."""
    params: GaloisRingParams = u.dom
    n = 2 * t + 2
    zu = [params.zero()] * n
    for j in range(1, n):
        zu[j] = u.coeff(j - 1)
    inv = [params.zero()] * n
    inv[0] = params.one()
    for kk in range(1, n):
        acc = params.zero()
        for j in range(1, kk + 1):
            acc = acc + zu[j] * inv[kk - j]
        inv[kk] = -acc
    for kk in range(1, n, 2):
        if not inv[kk].is_zero:
            raise OddCoefficientNonzero("series inverse has odd terms")
    T = [params.zero()] * (t + 1)
    for i in range(1, t + 1):
        T[i] = inv[2 * i]
    return UniPoly(params, T)


def key_equation_data(code: NegaCode, y) -> tuple[UniPoly, UniPoly, UniPoly, UniPoly]:
    """(s, u, T, U = 1 + T) for a received word."""
    s = syndromes(code, y)
    u = derive_u(s, code.t)
    T = derive_T(u, code.t)
    U = UniPoly.one(s.dom) + T
    return s, u, T, U


def sigma_from_pair(phi: UniPoly, omega: UniPoly) -> UniPoly | None:
    """Locator from a solution pair: sigma = omega(Z^2) + (phi(Z^2) -
    omega(Z^2)) / Z.  Needs matching constant terms (automatic for
    solution-module elements since U(0) = 1)."""
    if phi.coeff(0) != omega.coeff(0):
        return None
    dom = phi.dom
    deg = 2 * max(phi.degree, omega.degree, 0) + 1
    coeffs = [dom.zero()] * (deg + 1)
    for j in range(deg // 2 + 1):
        coeffs[2 * j] = omega.coeff(j)
    for j in range(1, deg // 2 + 2):
        if 2 * j - 1 <= deg:
            coeffs[2 * j - 1] = phi.coeff(j) - omega.coeff(j)
    return UniPoly(dom, coeffs)


def pair_from_sigma(sigma: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Inverse of the reconstruction map (used by the round-trip tests)."""
    dom = sigma.dom
    half = sigma.degree // 2 + 1
    omega = UniPoly(dom, [sigma.coeff(2 * j) for j in range(half + 1)])
    phi = UniPoly(dom, [sigma.coeff(2 * j) + sigma.coeff(2 * j - 1)
                        for j in range(half + 1)])
    return phi, omega


def _mu_root_multiplicity(musigma: UniPoly, gamma_bar: RingElem) -> int:
    fld = musigma.dom
    count = 0
    cur = musigma
    lin = UniPoly(fld, [-gamma_bar, fld.one()])
    while not cur.is_zero and cur.degree >= 1:
        q, r = quorem(cur, lin)
        if not r.is_zero:
            break
        count += 1
        cur = q
    return count


def classify_locator_roots(code: NegaCode, sigma: UniPoly) -> np.ndarray | None:
    """Error vector encoded by a normalized locator, or None if the root
    pattern is not consistent with a Lee error."""
    params = code.params
    n = code.n
    pows = code.alpha_pows()
    musig = mu_poly(sigma)
    if musig.is_zero:
        return None
    e = np.zeros(n, dtype=np.int64)
    total = 0
    for i in range(n):
        # position i puts roots at alpha^(-i) (magnitude 1, 2) and at
        # -alpha^(-i) = alpha^(n-i) (magnitude 3); a double error kills both
        gp = pows[(-i) % (2 * n)]
        gm = pows[(n - i) % (2 * n)]
        zp = sigma.eval(gp).is_zero
        zm = sigma.eval(gm).is_zero
        if not zp and not zm:
            continue
        mm = _mu_root_multiplicity(musig, gp.mu())
        if zp and zm:
            if mm != 2:
                return None
            e[i] = 2
        elif zp:
            if mm != 1:
                return None
            e[i] = 1
        else:
            if mm != 1:
                return None
            e[i] = 3
        total += mm
    if total != sigma.degree:
        return None
    return e


def _unit_leading(basis: GroebnerBasis) -> list[PairPoly]:
    return [e for e in basis.elements
            if not e.is_zero and e.lead_coeff().is_unit]


def unique_decode(code: NegaCode, y) -> tuple[np.ndarray, np.ndarray]:
    """Algebraic decoding of up to t Lee errors via the key equation."""
    y = np.asarray(y, dtype=np.int64) % 4
    s, u, T, U = key_equation_data(code, y)
    if s.is_zero:
        return y.copy(), np.zeros(code.n, dtype=np.int64)
    basis = bf_solve(U, code.t + 1)
    for elt in _unit_leading(basis):
        e = _error_from_pair(code, elt.f, elt.g, s, code.t)
        if e is not None:
            return (y - e) % 4, e
    raise DecodingFailure("no basis element yields a valid error vector")


def _error_from_pair(code: NegaCode, phi: UniPoly, omega: UniPoly,
                     s: UniPoly, wmax: int) -> np.ndarray | None:
    sigma = sigma_from_pair(phi, omega)
    if sigma is None or sigma.is_zero:
        return None
    c0 = sigma.coeff(0)
    if not c0.is_unit:
        return None
    sigma = sigma.scale(c0.inv())
    e = classify_locator_roots(code, sigma)
    if e is None or lee_weight(e) > wmax:
        return None
    if syndromes(code, e) != s:
        return None
    return e


# ---------------------------------------------------------------------------
# Wu-style list decoding

@dataclass(frozen=True)
class RatioPoint:
    """Evaluation of sigma_j / sigma_i at gamma: finite value, infinity,
    or ambiguous (both evaluations non-units)."""

    gamma: RingElem
    kind: str  # "finite" | "infinite" | "ambiguous"
    value: RingElem | None = None


def build_ratio_points(code: NegaCode, sigma_i: UniPoly,
                       sigma_j: UniPoly) -> list[RatioPoint]:
    points = []
    for l in range(2 * code.n):
        gamma = code.alpha_pows()[l]
        a = sigma_i.eval(gamma)
        b = sigma_j.eval(gamma)
        if a.is_unit:
            points.append(RatioPoint(gamma, "finite", b * a.inv()))
        elif b.is_unit:
            points.append(RatioPoint(gamma, "infinite"))
        else:
            points.append(RatioPoint(gamma, "ambiguous"))
    return points


def wu_support(tau: int, t: int, e: int, npoints: int) -> SupportSet:
    """Rectangle {(i, j) : i <= e*tau/2, floor(l/2)*j <= e*tau/2} with
    the degenerate floor(l/2) = 0 capped at j <= 1; must have more than
    e(e+1)/2 * npoints elements."""
    ell = tau - t
    icap = (e * tau) // 2
    hl = ell // 2
    jcap = icap // hl if hl >= 1 else 1
    S = SupportSet.from_iterable((i, j) for i in range(icap + 1)
                                 for j in range(jcap + 1))
    bound = (e * (e + 1) // 2) * npoints
    if len(S) <= bound:
        raise RadiusInfeasible(f"|S| = {len(S)} <= {bound} for tau = {tau}")
    return S


def _wu_interpolate(params: GaloisRingParams, points: list[RatioPoint],
                    S: SupportSet, e: int, free_index: int = 0) -> BiPoly:
    d = max(j for _, j in S.pairs)
    rows = []
    for pt in points:
        if pt.kind == "finite":
            rows.extend(multiplicity_rows(params, S, pt.gamma, pt.value, e))
        elif pt.kind == "infinite":
            rows.extend(multiplicity_rows_reversed(params, S, pt.gamma, e, d))
        # ambiguous points contribute no conditions
    if not rows:
        return BiPoly.constant(params, params.one())
    M = np.vstack(rows)
    v = smith_solve_homogeneous(params, M, free_index=free_index)
    return BiPoly(params, {pair: c for pair, c in zip(S.pairs, v)
                           if not c.is_zero})


def _linear_candidates(Q: BiPoly, hl: int, seed: int) -> list[tuple[UniPoly, UniPoly]]:
    """(a, b) read off Y-linear factors bY - a of Q with the degree and
    unit-leading-coefficient requirements."""
    out = []
    try:
        fl = factor_bivariate(Q, main="y", seed=seed)
    except (NoSquarefreeSpecialization, FactorizationFailed):
        return out
    for fac, _ in fl.factors:
        if fac.degree_y() != 1:
            continue
        ycols = fac.y_coeff_polys()
        b, a = ycols[1], -ycols[0]
        if b.is_zero or not b.lc().is_unit:
            continue
        if max(a.degree, 0) > hl or b.degree > hl:
            continue
        out.append((a, b))
    return out


def _sigma_pairs(basis: GroebnerBasis) -> list[tuple[PairPoly, PairPoly]]:
    """Candidate basis pairs, order-minimal unit-leading pair first."""
    unit = _unit_leading(basis)
    pairs = []
    for i in range(len(unit)):
        for j in range(i + 1, len(unit)):
            pairs.append((unit[i], unit[j]))
    return pairs


def _mod2_double_positions(code: NegaCode, s: UniPoly, tau: int, e: int,
                           seed: int) -> list[tuple[int, ...]]:
    """Candidate sets of magnitude-2 error positions, from the same
    pipeline run over the residue field (order-n point set)."""
    params = code.params
    fld = params.residue_field()
    t = code.t
    ell = tau - t
    hl = ell // 2
    sbar = mu_poly(s)
    ubar = derive_u(sbar, t)
    Tbar = derive_T(ubar, t)
    Ubar = UniPoly.one(fld) + Tbar
    basis = bf_solve(Ubar, t + 1)
    mual = code.alpha.mu()
    mual_pows = [fld.one()]
    for _ in range(code.n - 1):
        mual_pows.append(mual_pows[-1] * mual)
    out: list[tuple[int, ...]] = []
    seen: set[tuple[int, ...]] = set()
    for elt_i, elt_j in _sigma_pairs(basis):
        si = sigma_from_pair(elt_i.f, elt_i.g)
        sj = sigma_from_pair(elt_j.f, elt_j.g)
        if si is None or sj is None:
            continue
        points = []
        for l in range(code.n):
            gamma = mual_pows[l]
            a = si.eval(gamma)
            b = sj.eval(gamma)
            if not a.is_zero:
                points.append(RatioPoint(gamma, "finite", b * a.inv()))
            elif not b.is_zero:
                points.append(RatioPoint(gamma, "infinite"))
            else:
                points.append(RatioPoint(gamma, "ambiguous"))
        try:
            S = wu_support(tau, t, e, code.n)
        except RadiusInfeasible:
            continue
        for fi in range(_WU_KERNEL_RETRIES):
            try:
                Q = _wu_interpolate(fld, points, S, e, free_index=fi)
            except NoNonzeroSolution:
                break
            for a, b in _linear_candidates(Q, hl, seed) + [
                    (UniPoly.one(fld), UniPoly.zero(fld)),
                    (UniPoly.zero(fld), UniPoly.one(fld))]:
                Sg = a * si - b * sj
                if Sg.is_zero:
                    continue
                doubles = []
                for i in range(code.n):
                    if _mu_root_multiplicity(Sg, mual_pows[(-i) % code.n]) >= 2:
                        doubles.append(i)
                key = tuple(doubles)
                if doubles and key not in seen:
                    seen.add(key)
                    out.append(key)
            if out:
                break
        if out:
            break
    return out


def wu_list_decode(code: NegaCode, y, tau: int, e: int = 1, seed: int = 0,
                   _allow_mod2: bool = True) -> list[tuple[np.ndarray, np.ndarray]]:
    """All codewords within Lee distance tau of y (radius above the
    designed capability t), via rational interpolation of the two
    minimal key-equation solutions.

    Raises DecodingFailure when the list comes out empty and
    RadiusInfeasible when no adequate support set exists.
    """
    y = np.asarray(y, dtype=np.int64) % 4
    t = code.t
    if tau <= t:
        cw, err = unique_decode(code, y)
        return [(cw, err)]
    ell = tau - t
    hl = ell // 2
    S = wu_support(tau, t, e, 2 * code.n)  # feasibility check up front

    s, u, T, U = key_equation_data(code, y)
    results: dict[tuple, tuple[np.ndarray, np.ndarray]] = {}

    def accept(err: np.ndarray | None):
        if err is None:
            return
        cw = (y - err) % 4
        results[tuple(int(x) for x in cw)] = (cw, err)

    if s.is_zero:
        accept(np.zeros(code.n, dtype=np.int64))

    basis = bf_solve(U, t + 1)
    params = code.params
    for elt_i, elt_j in _sigma_pairs(basis):
        si = sigma_from_pair(elt_i.f, elt_i.g)
        sj = sigma_from_pair(elt_j.f, elt_j.g)
        if si is None or sj is None:
            continue
        points = build_ratio_points(code, si, sj)
        for fi in range(_WU_KERNEL_RETRIES):
            try:
                Q = _wu_interpolate(params, points, S, e, free_index=fi)
            except NoNonzeroSolution:
                break
            cands = _linear_candidates(Q, hl, seed)
            cands.append((UniPoly.one(params), UniPoly.zero(params)))
            cands.append((UniPoly.zero(params), UniPoly.one(params)))
            for a, b in cands:
                Sg = a * si - b * sj
                if Sg.is_zero:
                    continue
                c0 = Sg.coeff(0)
                if not c0.is_unit:
                    continue
                Sg = Sg.scale(c0.inv())
                err = classify_locator_roots(code, Sg)
                if err is None or lee_weight(err) > tau:
                    continue
                if syndromes(code, err) != s:
                    continue
                accept(err)
            if results:
                break
        if results:
            break

    if not results and _allow_mod2:
        for doubles in _mod2_double_positions(code, s, tau, e, seed):
            sub = np.zeros(code.n, dtype=np.int64)
            for i in doubles:
                sub[i] = 2
            y2 = (y - sub) % 4
            tau2 = tau - 2 * len(doubles)
            if tau2 < 0:
                continue
            try:
                part = wu_list_decode(code, y2, max(tau2, 0), e, seed,
                                      _allow_mod2=False)
            except (DecodingFailure, RadiusInfeasible):
                continue
            for cw, _ in part:
                err = (y - cw) % 4
                if lee_weight(err) <= tau and syndromes(code, err) == s:
                    results[tuple(int(x) for x in cw)] = (cw, err)

    if not results:
        raise DecodingFailure(f"empty list at radius {tau}")
    return [results[kk] for kk in sorted(results)]


def radius_bound(n: int, d: int) -> int:
    """Largest integer tau with (n - tau)^2 > n(n - d) (exact integer
    form of tau < n - sqrt(n(n - d)))."""
    if d > n:
        raise ValueError("need d <= n")
    return n - math.isqrt(n * (n - d)) - 1


def radius_bound_designed(n: int, t: int) -> int:
    """Variant with n - 2t under the root (the derivation-side form; the
    two differ by one for d = 2t + 1)."""
    return radius_bound(n, 2 * t)
