from enum import Enum, auto


class ResonanceLabel(Enum):
    TIME_RESONANT = auto()
    SPACE_RESONANT = auto()
    SPACETIME_RESONANT = auto()
    NONRESONANT = auto()


class ResonanceSection(Enum):
    """
    FIXED_XI: xi fixed, eta scanned over a square in the (e1, e2) plane.
    COLLINEAR: xi and eta both scanned along e1.
    """
    FIXED_XI = auto()
    COLLINEAR = auto()
