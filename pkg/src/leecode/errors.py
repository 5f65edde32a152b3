"""Exception hierarchy shared across the library.

Every failure the library can signal deliberately derives from
:class:`LeecodeError`, so callers (and the CLI) can distinguish domain
failures from genuine bugs.
"""


class LeecodeError(Exception):
    """Base class for all deliberate library failures."""


class ParamsMismatch(LeecodeError):
    """Operands belong to different rings."""


class NotAUnit(LeecodeError):
    """Inversion was requested for an element of the maximal ideal."""


class NoPrimitivePolynomial(LeecodeError):
    """Exhaustive search found no primitive polynomial (internal bug)."""


class RootOrderFailure(LeecodeError):
    """A constructed element does not have the required multiplicative order."""


class DivisorNotMonic(LeecodeError):
    """Polynomial division needs a monic divisor over a ring."""


class DegreeTooSmall(LeecodeError):
    """A degree cap is below the actual degree of the operand."""


class DegreeTooLarge(LeecodeError):
    """A polynomial exceeds the degree bound of the operation."""


class NoNonzeroSolution(LeecodeError):
    """The homogeneous system admits no nonzero kernel vector."""


class PreconditionViolated(LeecodeError):
    """A caller handed inconsistent data to a lifting step (caller bug)."""


class NotSquareFree(LeecodeError):
    """Multifactor lifting needs a square-free residue factorization."""


class NoSquarefreeSpecialization(LeecodeError):
    """No specialization point yields a square-free reduced polynomial."""


class FactorizationFailed(LeecodeError):
    """The combine-factors search could not reassemble the input."""


class TooFewTerms(LeecodeError):
    """The support set is too small for the requested decoding radius."""


class NoUnitLeadingPair(LeecodeError):
    """No auxiliary-module basis element has unit leading coefficients."""


class OddCoefficientNonzero(LeecodeError):
    """An internal parity invariant of the key equation failed."""


class DecodingFailure(LeecodeError):
    """No valid error vector could be produced for the received word."""


class RadiusInfeasible(LeecodeError):
    """The requested list-decoding radius is not achievable."""


class TooLarge(LeecodeError):
    """An exhaustive oracle was asked to enumerate beyond its size cap."""
