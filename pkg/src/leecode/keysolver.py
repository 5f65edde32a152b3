"""Byrne-Fitzpatrick Groebner bases for key-equation solution modules.

The solver tracks pairs (f, g) in R[Z]^2 with U*f = g mod Z^k and
refines a basis for the order-k module into one for order k+1 using the
discrepancy (the k-th coefficient of U*f - g).  A generalized pairing
A*f = B*g mod Z^k drives the same machinery; it is what the jump
construction solves on discrepancy polynomials to leap several orders
at once.

Term order: the monomial (Z^a, 0) has rank 2a and (0, Z^b) has rank
2b + 1; leading data of a pair is taken at its rank-maximal nonzero
monomial.  Divisibility between monomials is componentwise on
(component, coefficient valuation, degree).
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NoUnitLeadingPair
from .poly import UniPoly, conv_coeff
from .ring import GaloisRingParams, RingElem


@dataclass(frozen=True)
class Monomial:
    """p^valuation * Z^degree in one component of R[Z]^2."""

    component: int
    degree: int
    valuation: int

    @property
    def rank(self) -> int:
        return 2 * self.degree + self.component

    def divides(self, other: Monomial) -> bool:
        return (self.component == other.component
                and self.valuation <= other.valuation
                and self.degree <= other.degree)


@dataclass(frozen=True)
class PairPoly:
    """An element (f, g) of the free module R[Z]^2."""

    f: UniPoly
    g: UniPoly

    @property
    def is_zero(self) -> bool:
        return self.f.is_zero and self.g.is_zero

    def lead_rank(self) -> int:
        rf = 2 * self.f.degree if not self.f.is_zero else -1
        rg = 2 * self.g.degree + 1 if not self.g.is_zero else -1
        return max(rf, rg)

    def lead_monomial(self) -> Monomial:
        if self.is_zero:
            raise ValueError("zero pair has no leading monomial")
        rank = self.lead_rank()
        comp = rank & 1
        deg = rank >> 1
        return Monomial(comp, deg, self.lead_coeff().val())

    def lead_coeff(self) -> RingElem:
        rank = self.lead_rank()
        poly = self.g if rank & 1 else self.f
        return poly.lc()

    def sub_scaled(self, other: PairPoly, q: RingElem) -> PairPoly:
        return PairPoly(self.f - other.f.scale(q), self.g - other.g.scale(q))

    def times_z(self) -> PairPoly:
        return PairPoly(self.f.shift(1), self.g.shift(1))

    def scale(self, c: RingElem) -> PairPoly:
        return PairPoly(self.f.scale(c), self.g.scale(c))


@dataclass(frozen=True)
class GroebnerBasis:
    """Basis of the order-k solution module of the pairing A*f = B*g.

    For the standard key-equation module B is the constant 1 and A is
    the module parameter U.
    """

    elements: tuple[PairPoly, ...]
    k: int
    A: UniPoly
    B: UniPoly

    @property
    def U(self) -> UniPoly:
        return self.A


def _pair_disc(elt: PairPoly, A: UniPoly, B: UniPoly, k: int) -> RingElem:
    return conv_coeff(A, elt.f, k) - conv_coeff(B, elt.g, k)


def discrepancy(basis_elt: PairPoly, U: UniPoly, k: int) -> RingElem:
    """The k-th coefficient of U*f - g."""
    return conv_coeff(U, basis_elt.f, k) - basis_elt.g.coeff(k)


def in_module(elt: PairPoly, A: UniPoly, B: UniPoly, k: int) -> bool:
    for lam in range(k):
        if not _pair_disc(elt, A, B, lam).is_zero:
            return False
    return True


def _init_basis(A: UniPoly, B: UniPoly) -> GroebnerBasis:
    dom: GaloisRingParams = A.dom
    one = UniPoly.one(dom)
    zero = UniPoly.zero(dom)
    return GroebnerBasis((PairPoly(one, zero), PairPoly(zero, one)), 0, A, B)


def bf_init(U: UniPoly) -> GroebnerBasis:
    """Basis {(1,0), (0,1)} of the full module (order 0)."""
    return _init_basis(U, UniPoly.one(U.dom))


def bf_refine(basis: GroebnerBasis) -> GroebnerBasis:
    """Refine a basis for order k into one for order k+1."""
    params: GaloisRingParams = basis.A.dom
    k = basis.k
    elts = sorted(basis.elements, key=PairPoly.lead_rank)
    zetas = [_pair_disc(e, basis.A, basis.B, k) for e in elts]
    new = []
    for i, (e, z) in enumerate(zip(elts, zetas)):
        if z.is_zero:
            new.append(e)
            continue
        vi = z.val()
        helper = None
        for j in range(i):
            if elts[j].lead_rank() >= e.lead_rank():
                continue
            zj = zetas[j]
            if not zj.is_zero and zj.val() <= vi:
                helper = j
                break
        if helper is None:
            new.append(e.times_z())
        else:
            zj = zetas[helper]
            q = z.pdiv(zj.val()) * zj.unit_part().inv()
            assert q * zj == z
            new.append(e.sub_scaled(elts[helper], q))
    out = GroebnerBasis(tuple(sorted(new, key=PairPoly.lead_rank)),
                        k + 1, basis.A, basis.B)
    assert all(in_module(e, out.A, out.B, out.k) for e in out.elements), \
        "refined element left the solution module"
    return out


def bf_solve(U: UniPoly, k: int) -> GroebnerBasis:
    """k refinement passes from the order-0 basis ("solution by
    approximations")."""
    basis = bf_init(U)
    for _ in range(k):
        basis = bf_refine(basis)
    return basis


def solve_pair_module(A: UniPoly, B: UniPoly, k: int) -> GroebnerBasis:
    """Basis for {(f, g) : A*f = B*g mod Z^k} (generalized pairing)."""
    basis = _init_basis(A, B)
    for _ in range(k):
        basis = bf_refine(basis)
    return basis


def discrepancy_poly(elt: PairPoly, U: UniPoly, k: int, ell: int) -> UniPoly:
    """sum over lam < ell of (U*f - g)_{k+lam} Z^lam."""
    dom = U.dom
    return UniPoly(dom, [discrepancy(elt, U, k + lam) for lam in range(ell)])


def jump_pair(elt_i: PairPoly, elt_j: PairPoly, U: UniPoly, k: int,
              ell: int) -> tuple[UniPoly, UniPoly]:
    """Polynomials (a, b) with a*elt_i - b*elt_j in the order-(k+ell)
    module and deg a + deg b <= ell.

    Solved by running the same Groebner machinery on the auxiliary
    module of the two discrepancy polynomials; returns the order-minimal
    admissible basis element.
    """
    dom: GaloisRingParams = U.dom
    one = UniPoly.one(dom)
    zero = UniPoly.zero(dom)
    if ell <= 0:
        return one, zero
    h_i = discrepancy_poly(elt_i, U, k, ell)
    h_j = discrepancy_poly(elt_j, U, k, ell)
    if h_i.is_zero:
        return one, zero
    basis = solve_pair_module(h_i, h_j, ell)
    for elt in basis.elements:
        a, b = elt.f, elt.g
        if elt.is_zero:
            continue
        da = a.degree if not a.is_zero else 0
        db = b.degree if not b.is_zero else 0
        if da + db > ell:
            continue
        if not a.is_zero and not a.lc().is_unit:
            continue
        if not b.is_zero and not b.lc().is_unit:
            continue
        if a.is_zero:
            continue
        jumped = PairPoly(a * elt_i.f - b * elt_j.f, a * elt_i.g - b * elt_j.g)
        if in_module(jumped, U, UniPoly.one(dom), k + ell):
            return a, b
    raise NoUnitLeadingPair(
        "no unit-leading (a, b) within the degree budget solves the jump")
