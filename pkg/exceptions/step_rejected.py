from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError


class StepRejectedError(LaboratoryError):
    """Raised when a time step is still rejected after the maximal number of halvings."""
    category = ErrorCategory.STEP_REJECTED
