"""Exception hierarchy shared by every coherence_lab module."""


class CoherenceLabError(Exception):
    """Base class for all errors raised by coherence_lab."""


class InvalidDimension(CoherenceLabError, ValueError):
    pass


class DimensionMismatch(CoherenceLabError, ValueError):
    pass


class NotHermitian(CoherenceLabError, ValueError):
    pass


class NumericalFailure(CoherenceLabError, ArithmeticError):
    pass


class TruncationError(CoherenceLabError, ValueError):
    """State or request reaches too close to the Fock-space cutoff."""


class InvalidState(CoherenceLabError, ValueError):
    """Density matrix violates hermiticity, normalization or positivity."""


class InvalidStateSpec(CoherenceLabError, ValueError):
    pass


class InvalidIndexPair(CoherenceLabError, ValueError):
    pass


class InvalidConfig(CoherenceLabError, ValueError):
    pass


class ParseError(CoherenceLabError, ValueError):
    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class IoError(CoherenceLabError, OSError):
    pass
