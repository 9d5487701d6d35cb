from dataclasses import dataclass


@dataclass(frozen=True)
class BesovIndex:
    """
    Index (s, p, r) of the homogeneous Besov space B^s_{p,r}.
    """

    s: float
    p: float = 2.0
    r: float = 2.0

    def __post_init__(self) -> None:
        if self.p < 1 or self.r < 1:
            raise ValueError(f"Besov integrability and summability must be >= 1, got p={self.p}, r={self.r}")
