from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError


class SelfTestFailedError(LaboratoryError):
    """Raised after the self-test report is written when at least one invariant check failed."""
    category = ErrorCategory.SELFTEST_FAILED
