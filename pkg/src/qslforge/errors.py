"""Exception types raised across the library."""


class QslForgeError(Exception):
    """Base class for all qslforge errors."""


class ParseError(QslForgeError):
    """Input JSON is malformed or violates the documented schema."""


class NotUnitaryError(QslForgeError):
    """A matrix claimed to be unitary fails the unitarity check."""


class NotHermitianError(QslForgeError):
    """A matrix claimed to be Hermitian fails the Hermiticity check."""


class DimensionMismatchError(QslForgeError):
    """Operands have incompatible or unsupported dimensions."""


class ConvergenceFailureError(QslForgeError):
    """An eigendecomposition failed to converge."""


class BadPError(QslForgeError):
    """A norm order p < 1 was requested."""


class UnknownGateError(QslForgeError):
    """Requested gate name is not in the registry."""


class BadParamsError(QslForgeError):
    """Gate parameters have the wrong arity or value."""


class BadShapeError(QslForgeError):
    """Shape-function samples are negative or not mean-normalized."""


class EmptyInputError(QslForgeError):
    """An operation received an empty collection."""


class NormError(QslForgeError):
    """A state vector is not normalized."""


class NotAllowedProtocolError(QslForgeError):
    """A schedule does not implement the target gate to the required fidelity."""
