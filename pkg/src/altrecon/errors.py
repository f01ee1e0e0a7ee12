"""Exception types raised across the package."""


class SizeError(ValueError):
    """Operand dimensions do not agree."""


class RankError(ValueError):
    """Requested rank is outside ``[1, min(rows, cols)]``."""


class CovarianceError(ValueError):
    """Noise covariance is not symmetric positive definite."""


class InputError(ValueError):
    """Input violates a precondition other than size or rank."""
