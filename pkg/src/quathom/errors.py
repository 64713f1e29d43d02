"""Exception hierarchy shared by all quathom modules."""


class QuathomError(Exception):
    """Base class for all quathom errors."""


class NotUnitImaginary(QuathomError):
    """a^2 + b^2 + c^2 != 1 for a would-be induced complex structure."""


class FieldClosureError(QuathomError):
    """A computation left the Gaussian-rational field on the exact backend."""


class NotScalar(QuathomError):
    """An endomorphism expected to be scalar deviates from lambda*id."""


class RingMismatch(QuathomError):
    """Operands belong to different series rings."""


class SingularLinearPart(QuathomError):
    """A substitution map with non-invertible linear part cannot be inverted."""


class BudgetExceeded(QuathomError):
    """The Groebner pair budget was exhausted."""


class DoesNotPreserveIdeal(QuathomError):
    """A substitution map does not map the relation ideal into itself."""


class NotScalarDifferential(QuathomError):
    """The induced action on the cotangent space is not a scalar."""


class LambdaOutOfRange(QuathomError):
    """The cotangent scalar is zero or of modulus >= 1."""


class PreconditionViolated(QuathomError):
    """An argument violates a documented precondition (e.g. r not in m^2)."""


class NotQuaternionInvariant(QuathomError):
    """A plane's spanning set is not closed under the quaternion actions."""


class DuplicatePlane(QuathomError):
    """Two planes of a union coincide as subspaces."""


class ParseError(QuathomError):
    """Syntax error in a job file or polynomial expression."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "%s (line %s, column %s)" % (message, line, column)
        super().__init__(message)


class ValidationError(QuathomError):
    """A structurally valid job file has missing or inconsistent fields."""

    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = "%s (field: %s)" % (message, field)
        super().__init__(message)
