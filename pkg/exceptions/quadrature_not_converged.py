from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError


class QuadratureNotConvergedError(LaboratoryError):
    """Raised when node doubling changes a Duhamel integral beyond tolerance."""
    category = ErrorCategory.QUADRATURE_NOT_CONVERGED
