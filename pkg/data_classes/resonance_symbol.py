from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class ResonanceSymbol:
    """
    Bilinear phase |xi|^2 + sigma1 |eta|^2 + sigma2 |xi - eta|^2.

    Attributes:
        sigma1 (int): Sign of |eta|^2, +1 or -1.
        sigma2 (int): Sign of |xi - eta|^2, +1 or -1.
    """

    sigma1: int
    sigma2: int

    def __post_init__(self) -> None:
        if self.sigma1 not in (1, -1) or self.sigma2 not in (1, -1):
            raise ValueError(f"Signs must be +1 or -1, got ({self.sigma1}, {self.sigma2})")

    @classmethod
    def from_signs(cls, signs: str) -> "ResonanceSymbol":
        """
        Args:
            signs (str): Two characters from {+, -}, e.g. "--".
        """
        if len(signs) != 2 or any(c not in "+-" for c in signs):
            raise ValueError(f"Sign pair must look like '+-', got {signs!r}")
        return cls(1 if signs[0] == "+" else -1, 1 if signs[1] == "+" else -1)

    @property
    def signs(self) -> str:
        return ("+" if self.sigma1 > 0 else "-") + ("+" if self.sigma2 > 0 else "-")

    @property
    def catalog_name(self) -> Optional[str]:
        # only the (-,-) phase can be matched to a numbered symbol: its eta-gradient is xi - eta - eta
        return "Omega_3" if (self.sigma1, self.sigma2) == (-1, -1) else None
