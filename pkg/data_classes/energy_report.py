from dataclasses import dataclass, field
from typing import List


@dataclass
class EnergyReport:
    """
    Online diagnostics of a trajectory.

    Attributes:
        gamma (float): Derivative half-order of the weighted energy.
        times (List[float]): Sample times in increasing order.
        energies (List[float]): Weighted energy E_gamma per sample (NaN outside J).
        blowup_integral (List[float]): Running integral of ||Lap rho||_inf + ||div u||_inf.
        laplacian_z_integral (List[float]): Running integral of ||Lap z||_inf (complex trajectories).
        rho_min (List[float]): Minimal density per sample.
        rho_max (List[float]): Maximal density per sample.
        range_ok (bool): Density stayed inside J.
        integral_ok (bool): Blow-up integral stayed below its ceiling.
    """

    gamma: float
    times: List[float] = field(default_factory=list)
    energies: List[float] = field(default_factory=list)
    blowup_integral: List[float] = field(default_factory=list)
    laplacian_z_integral: List[float] = field(default_factory=list)
    rho_min: List[float] = field(default_factory=list)
    rho_max: List[float] = field(default_factory=list)
    range_ok: bool = True
    integral_ok: bool = True

    @property
    def continuation_ok(self) -> bool:
        return self.range_ok and self.integral_ok

    def to_rows(self) -> List[dict]:
        rows = []
        for index, t in enumerate(self.times):
            rows.append({"t": t, "E_gamma": self.energies[index],
                         "blowup_integral": self.blowup_integral[index],
                         "rho_min": self.rho_min[index], "rho_max": self.rho_max[index],
                         "continuation_ok": self.continuation_ok})
        return rows

    def to_dict(self) -> dict:
        return {"gamma": self.gamma,
                "final_blowup_integral": self.blowup_integral[-1] if self.blowup_integral else 0.0,
                "final_laplacian_z_integral": self.laplacian_z_integral[-1] if self.laplacian_z_integral else 0.0,
                "rho_min": min(self.rho_min) if self.rho_min else None,
                "rho_max": max(self.rho_max) if self.rho_max else None,
                "range_ok": self.range_ok, "integral_ok": self.integral_ok,
                "continuation_ok": self.continuation_ok}
