"""Exception types shared across the toolkit.

Mathematical *verdicts* (NotField, undetermined freeness, Indeterminate
degrees) are returned as values, not raised; exceptions are reserved for
contract violations and for negative certifications that abort a pipeline.
"""


class RadixHopfError(Exception):
    """Base class for all toolkit errors."""


class SingularMatrix(RadixHopfError):
    pass


class InvalidDescriptor(RadixHopfError):
    """x^n - a is reducible over Q, or (n, a) violates basic invariants."""


class NotInvertible(RadixHopfError):
    pass


class NotAField(RadixHopfError):
    """Operation requires a field-certified algebra."""


class DegreeTooLarge(RadixHopfError):
    """Enumeration requested beyond the supported degree cap."""


class DimensionMismatch(RadixHopfError):
    """A descended fixed space has the wrong dimension."""


class NotInL(RadixHopfError):
    """Element expected to lie in L = Q(alpha) does not."""


class ZeroElement(RadixHopfError):
    pass


class NotEigen(RadixHopfError):
    """Element is not a simultaneous eigenvector; carries a witness."""

    def __init__(self, message, witness_index=None):
        super().__init__(message)
        self.witness_index = witness_index


class NotEigenBasis(RadixHopfError):
    pass


class SingularLambda(RadixHopfError):
    """Eigenvalue matrix is singular; signals corrupted structure data."""


class NotGenerating(RadixHopfError):
    pass


class NotStronglyDisjoint(RadixHopfError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotMinimalExponent(RadixHopfError):
    pass


class ComplementIntersects(RadixHopfError):
    pass


class NotDisjoint(RadixHopfError):
    pass


class RankDeficient(RadixHopfError):
    pass


class NotIdempotent(RadixHopfError):
    pass


class NotCertified(RadixHopfError):
    """Monogenicity test failed; no power integral basis certificate."""


class NotProductStructure(RadixHopfError):
    pass


class DegreeMismatch(RadixHopfError):
    pass
