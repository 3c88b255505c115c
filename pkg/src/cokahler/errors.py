"""Exception hierarchy shared by every module of the package."""


class CoKahlerError(Exception):
    """Base class for all errors raised by this package."""


class IntegralityError(CoKahlerError):
    """An operation that needs integer entries received a non-integer."""


class DimensionError(CoKahlerError):
    """Matrix or vector shapes do not fit together."""


class NotUnimodularError(CoKahlerError):
    """The matrix is not invertible over the integers (|det| != 1)."""


class DegreeError(CoKahlerError):
    """A form degree lies outside the allowed range."""


class DegeneracyError(CoKahlerError):
    """A 2-form (or pairing) that must be nondegenerate is singular."""


class InfiniteOrderError(CoKahlerError):
    """The operation needs a finite-order monodromy matrix."""


class InternalConsistencyError(CoKahlerError):
    """Two computations that must agree did not; this indicates a bug."""


class NoInvariantKahlerError(CoKahlerError):
    """Averaging the Kahler form over the group produced a degenerate form.

    The pair (A, omega) cannot come from a Hermitian isometry; try another
    omega.
    """


class NotInvariantError(CoKahlerError):
    """A class expected to be fixed by the group action is not fixed."""


class NotSymplecticError(CoKahlerError):
    """The degree-one action does not preserve the cup-product pairing."""


class ParseError(CoKahlerError):
    """The input document is malformed."""


class ValidationError(ParseError):
    """The input document parsed but violates a structural rule."""


class UnknownCorpusError(CoKahlerError):
    """The requested built-in example does not exist."""


class CorpusMismatchError(CoKahlerError):
    """A built-in example produced values that differ from the expected ones."""
