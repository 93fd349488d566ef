"""Exception types shared across the package.

Plain division by zero (polynomial divmod, lcm with a zero argument)
raises the builtin ZeroDivisionError; everything else gets a named class
so callers can tell validation failures apart.
"""


class FqcoverError(ValueError):
    """Base class for all package-specific errors."""


class CompositeCharacteristicError(FqcoverError):
    """The field characteristic is not prime."""


class ReducibleModulusError(FqcoverError):
    """The supplied extension-field modulus is not irreducible (or not monic)."""


class UnsupportedFieldSizeError(FqcoverError):
    """No built-in modulus for this extension field; supply one explicitly."""


class PolyParseError(FqcoverError):
    """The polynomial text does not match the grammar."""


class CoefficientOutOfRangeError(PolyParseError):
    """A parsed coefficient is not a valid element of the field."""


class NotMonicError(FqcoverError):
    """A monic polynomial was required."""


class DegreeZeroError(FqcoverError):
    """A nonconstant polynomial was required."""


class ZeroPolynomialError(FqcoverError):
    """The zero polynomial is not a valid argument here."""


class NonCoprimeModuliError(FqcoverError):
    """Chinese-remainder moduli must be pairwise coprime."""


class ExhaustiveLimitExceededError(FqcoverError):
    """The residue ring is too large for exhaustive enumeration."""


class LevelOutOfRangeError(FqcoverError):
    """A tower level index is outside 1..J."""


class ScheduleShapeError(FqcoverError):
    """The distortion schedule does not have the shape this mode requires."""
