from enum import Enum, auto


class SolverScheme(Enum):
    STRANG_SPLIT_RK4 = auto()
    ETD_RK4 = auto()
    RK4_PSEUDOSPECTRAL = auto()

    def is_complex_form(self) -> bool:
        """
        Returns:
            bool: True for schemes that integrate the complex z-form.
        """
        return self is not SolverScheme.RK4_PSEUDOSPECTRAL


class IntegrationDirection(Enum):
    FORWARD = auto()
    BACKWARD = auto()
