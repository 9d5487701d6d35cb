from enum import Enum, auto


class KappaFamily(Enum):
    """
    Enumeration of capillarity coefficient families.
    QUANTUM: kappa = kappa0 / rho (Bohm potential case).
    CONSTANT: kappa = kappa0.
    POWER: kappa = kappa0 * rho**m.
    """
    QUANTUM = auto()
    CONSTANT = auto()
    POWER = auto()
