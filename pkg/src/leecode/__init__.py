"""Exact-arithmetic list decoding of quaternary negacyclic codes in the
Lee metric and of Reed-Solomon codes over Galois rings."""

from ._kernels import active_backend
from .errors import LeecodeError
from .hensel import (FactorList, HenselQuad, factor_bivariate, field_factor,
                     hensel_step, multifactor_lift)
from .keysolver import (GroebnerBasis, PairPoly, bf_init, bf_refine, bf_solve,
                        discrepancy, discrepancy_poly, jump_pair)
from .nega import (NegaCode, build_ratio_points, derive_T, derive_u,
                   error_locator, lee_distance, lee_weight, nega_construct,
                   nega_encode, radius_bound, syndromes, unique_decode,
                   wu_list_decode)
from .poly import (BiPoly, SupportSet, UniPoly, eval_bi, eval_uni, quorem,
                   shift_bi, smith_solve_homogeneous, y_reverse)
from .ring import (GaloisRingParams, RingElem, construct_galois_ring,
                   mu_reduce, ring_arith, teichmuller_lift, teichmuller_set,
                   unit_inverse)
from .rs import RSCode, build_support, interpolate, list_decode, rs_code, rs_encode

__version__ = "0.1.0"
