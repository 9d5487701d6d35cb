from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError


class DegenerateInputError(LaboratoryError):
    """Raised when a negative-order homogeneous norm is requested for a field with a nonzero mean."""
    category = ErrorCategory.DEGENERATE_INPUT
