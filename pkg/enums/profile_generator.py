from enum import Enum, auto


class ProfileGenerator(Enum):
    """
    Enumeration of scattering profile generators.
    GAUSSIAN_DIPOLE: x-derivative of a centred Gaussian (mean zero by construction).
    RING_PACKET: Gaussian shell in Fourier space around a fixed radius.
    USER_SNAPSHOT: Field read from a snapshot file.
    """
    GAUSSIAN_DIPOLE = auto()
    RING_PACKET = auto()
    USER_SNAPSHOT = auto()
