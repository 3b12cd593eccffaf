"""Exception hierarchy shared by the whole package."""


class QuivermultError(Exception):
    """Base class for all library errors."""


class SizeMismatch(QuivermultError):
    """Operands have incompatible shapes or truncation orders."""


class SingularMatrix(QuivermultError):
    """A matrix that had to be invertible is not."""


class NonInvertibleConstantTerm(QuivermultError):
    """Constant term of a truncated matrix polynomial is singular."""


class NotSemisimpleLeading(QuivermultError):
    """Leading coefficient is not semisimple with the expected spectrum."""


class TopCoefficientZero(QuivermultError):
    """The top pole coefficient vanishes where a nonzero one is required."""


class DimensionTooLarge(QuivermultError):
    """A vertex dimension exceeds the ambient space it must embed into."""


class NegativeTargetDimension(QuivermultError):
    """A reflection would produce a negative dimension; both sides are empty."""


class OrbitAssertionFailed(QuivermultError):
    """Input data does not lie on the coadjoint orbit the operation expects."""


class NotIrregularPole(QuivermultError):
    """The chosen vertex is not an irregular pole vertex."""


class EmptySpace(QuivermultError):
    """An operation received a zero-dimensional total space."""


class TraceConditionViolated(QuivermultError):
    """Scalar parameters violate the required trace/residue constraint."""


class BundleFormatError(QuivermultError):
    """A JSON document is malformed or internally inconsistent."""
