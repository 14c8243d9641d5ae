"""Exception types shared across the package."""


class RZerosError(Exception):
    """Base class for all package errors."""


class PoleError(RZerosError):
    """Evaluation requested at (or too close to) a pole of the function."""


class PoleProximityError(RZerosError):
    """Quadrature crossing point too close to an integrand pole."""


class ConvergenceError(RZerosError):
    """An iterative scheme exhausted its refinement budget."""


class DomainError(RZerosError):
    """Argument outside the mathematical domain of the operation."""


class TrackingError(RZerosError):
    """A level-curve track was lost before reaching its handoff point."""


class RunawayError(TrackingError):
    """A track escaped to the right of the admissible region."""


class BasinError(RZerosError):
    """Newton start point outside the convergence basin."""


class DivergenceError(RZerosError):
    """Newton iteration diverged."""


class SingularFitError(RZerosError):
    """Least-squares design matrix is numerically singular."""


class HorizonError(RZerosError):
    """Statistic requested beyond the zero set's completeness horizon."""


class CertificationError(RZerosError):
    """Zero accuracy certificate below what the output format requires."""


class ZeroFileError(RZerosError):
    """Malformed zeros file."""

    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number
