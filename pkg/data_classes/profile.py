from dataclasses import dataclass, field
from typing import Dict, Optional

from data_classes.spectral_field import SpectralField
from enums.profile_generator import ProfileGenerator


@dataclass(frozen=True)
class ProfileNormReport:
    """
    The smallness aggregate epsilon_0 of a scattering profile and its ingredients.
    """

    high_sobolev: float
    negative_sobolev: float
    besov_b11: float
    weighted_h1: float
    high_order: float
    threshold: float
    wrap_caveat: bool

    @property
    def epsilon0(self) -> float:
        return self.high_sobolev + self.negative_sobolev + self.besov_b11 + self.weighted_h1

    @property
    def admissible(self) -> bool:
        return self.epsilon0 < self.threshold

    def to_dict(self) -> dict:
        return {"H_high": self.high_sobolev, "H_high_order": self.high_order,
                "H_dot_minus_2": self.negative_sobolev, "B11": self.besov_b11,
                "x2_H1": self.weighted_h1, "epsilon0": self.epsilon0,
                "threshold": self.threshold, "admissible": self.admissible,
                "wrap_caveat": self.wrap_caveat}


@dataclass(frozen=True, eq=False)
class Profile:
    """
    Scattering datum phi with the parameters that generated it.
    """

    generator: ProfileGenerator
    field: SpectralField
    parameters: Dict[str, object] = field(default_factory=dict)
    norms: Optional[ProfileNormReport] = None

    def describe(self) -> dict:
        return {"generator": self.generator.name.lower(), "parameters": dict(self.parameters),
                "norms": self.norms.to_dict() if self.norms else None}
