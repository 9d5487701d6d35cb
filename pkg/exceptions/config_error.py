from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError


class ConfigError(LaboratoryError):
    """Raised when the experiment configuration cannot be parsed or validated."""
    category = ErrorCategory.CONFIG
