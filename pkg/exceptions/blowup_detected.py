from enums.error_category import ErrorCategory
from exceptions.laboratory_error import LaboratoryError


class BlowupDetectedError(LaboratoryError):
    """Raised when the continuation criterion trips during a final-data solve."""
    category = ErrorCategory.BLOWUP_DETECTED

    def __init__(self, message: str, report: dict = None) -> None:
        super().__init__(message)
        self.report = report or {}
