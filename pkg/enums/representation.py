from enum import Enum, auto


class Representation(Enum):
    """
    Enumeration of the two representations a spectral field can be carried in.
    PHYSICAL: Grid-point values.
    FOURIER: Unitary-normalized Fourier coefficients.
    """
    PHYSICAL = auto()
    FOURIER = auto()
