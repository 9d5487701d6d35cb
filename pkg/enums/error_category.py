from enum import Enum


class ErrorCategory(Enum):
    """
    Machine-readable failure categories. The value is the process exit status.
    """
    INTERNAL = 1
    CONFIG = 2
    DENSITY_RANGE_VIOLATION = 3
    DEGENERATE_INPUT = 4
    NON_IRROTATIONAL_INPUT = 5
    STEP_REJECTED = 6
    QUADRATURE_NOT_CONVERGED = 7
    INSUFFICIENT_SAMPLES = 8
    BLOWUP_DETECTED = 9
    SELFTEST_FAILED = 10

    @property
    def exit_status(self) -> int:
        return self.value

    @property
    def slug(self) -> str:
        return self.name.lower()
