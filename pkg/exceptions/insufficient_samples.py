from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError


class InsufficientSamplesError(LaboratoryError):
    """Raised when a decay fit window holds too few positive samples."""
    category = ErrorCategory.INSUFFICIENT_SAMPLES
