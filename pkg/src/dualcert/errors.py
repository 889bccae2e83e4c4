"""Exception types raised by dualcert."""


class DualCertError(Exception):
    """Base class for all dualcert errors."""


class DimensionMismatch(DualCertError, ValueError):
    pass


class InvalidMatrix(DualCertError, ValueError):
    """Matrix is not square, not 2-D, or has non-finite entries."""


class NotHermitian(DualCertError, ValueError):
    """A positivity question was asked of a matrix that is not Hermitian."""

    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class NotABasis(DualCertError, ValueError):
    pass


class NotOrthonormal(DualCertError, ValueError):
    pass


class ZeroLambda(DualCertError, ValueError):
    pass


class WrongBasisKind(DualCertError, ValueError):
    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict
