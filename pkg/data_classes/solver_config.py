from dataclasses import dataclass, field, replace
from typing import Optional

from enums.solver_scheme import IntegrationDirection, SolverScheme


@dataclass(frozen=True)
class SolverConfig:
    """
    Time-stepping parameters.

    Attributes:
        dt (float): Positive nominal step size.
        scheme (SolverScheme): Time-stepping scheme.
        dealias (bool): Apply the two-thirds rule after every nonlinear evaluation.
        direction (IntegrationDirection): Forward or backward in time.
        max_step_rejections (int): Maximal number of recursive step halvings.
        defect_tolerance (Optional[float]): Relative one-step defect bound, None disables the check.
        snapshot_cadence (int): Record every n-th sample time (1 records all).
        safety (float): Safety factor of stability_dt.
        amplitude_ceiling (float): Assumed bound on |l| in stability_dt.
    """

    dt: float = 1e-2
    scheme: SolverScheme = SolverScheme.STRANG_SPLIT_RK4
    dealias: bool = True
    direction: IntegrationDirection = IntegrationDirection.FORWARD
    max_step_rejections: int = 4
    defect_tolerance: Optional[float] = field(default=1e-8)
    snapshot_cadence: int = 1
    safety: float = 0.5
    amplitude_ceiling: float = 1e-2

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.max_step_rejections < 0:
            raise ValueError("max_step_rejections must be nonnegative")

    def towards(self, direction: IntegrationDirection) -> "SolverConfig":
        return replace(self, direction=direction)

    def with_dt(self, dt: float) -> "SolverConfig":
        return replace(self, dt=dt)

    def to_dict(self) -> dict:
        return {"dt": self.dt, "scheme": self.scheme.name.lower(), "dealias": self.dealias,
                "direction": self.direction.name.lower(), "max_step_rejections": self.max_step_rejections,
                "defect_tolerance": self.defect_tolerance, "snapshot_cadence": self.snapshot_cadence}
