from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError


class DensityRangeViolation(LaboratoryError):
    """Raised when a density (or its image under L) leaves the working interval J."""
    category = ErrorCategory.DENSITY_RANGE_VIOLATION
