"""Exception types raised across the package."""


class CoherenceFlowError(ValueError):
    """Base class for all domain errors."""


class NotHermitian(CoherenceFlowError):
    pass


class NotPSD(CoherenceFlowError):
    pass


class NotUnitary(CoherenceFlowError):
    pass


class NoConvergence(CoherenceFlowError, ArithmeticError):
    """The Jacobi eigensolver exhausted its sweep budget."""


class DimMismatch(CoherenceFlowError):
    pass


class BlochOutOfBall(CoherenceFlowError):
    pass


class InvalidState(CoherenceFlowError):
    """Matrix is not a density matrix within tolerance."""


class POutOfRange(CoherenceFlowError):
    pass


class NonPositiveT(CoherenceFlowError):
    pass


class InvalidConfig(CoherenceFlowError):
    pass


class UnknownFixture(CoherenceFlowError, KeyError):
    pass
