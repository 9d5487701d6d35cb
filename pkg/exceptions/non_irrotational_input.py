from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError


class NonIrrotationalInputError(LaboratoryError):
    """Raised when a velocity field is not the gradient of a periodic potential."""
    category = ErrorCategory.NON_IRROTATIONAL_INPUT
