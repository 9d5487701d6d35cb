from enum import Enum, auto


class PressureFamily(Enum):
    """
    Enumeration of pressure laws.
    CUBIC_DEFAULT: P = P0 + (rho - 1)**3.
    USER_POLYNOMIAL: P = sum_k c_k (rho - 1)**k with c_1 = 0.
    """
    CUBIC_DEFAULT = auto()
    USER_POLYNOMIAL = auto()
