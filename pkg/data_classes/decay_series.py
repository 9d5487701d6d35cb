from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np


@dataclass
class DecayFit:
    """
    Least-squares fit of log(value) against log(t).

    Attributes:
        slope (float): Fitted exponent.
        intercept (float): Fitted log-prefactor.
        residual (float): RMS misfit in log space.
        window (Tuple[float, float]): Time window the fit used.
        samples (int): Number of samples inside the window.
    """

    slope: float
    intercept: float
    residual: float
    window: Tuple[float, float]
    samples: int

    def to_dict(self) -> dict:
        return {"slope": self.slope, "intercept": self.intercept, "residual": self.residual,
                "window": list(self.window), "samples": self.samples}


@dataclass
class DecaySeries:
    """
    Time-stamped norm samples with an optional decay fit.

    Attributes:
        name (str): What the series measures.
        times (List[float]): Sample times.
        values (List[float]): Sample values.
        fit (Optional[DecayFit]): Fit result once computed.
        wrap_horizon (Optional[float]): Wrap-around horizon reported with the fit.
    """

    name: str
    times: List[float] = field(default_factory=list)
    values: List[float] = field(default_factory=list)
    fit: Optional[DecayFit] = None
    wrap_horizon: Optional[float] = None

    def append(self, t: float, value: float) -> None:
        self.times.append(float(t))
        self.values.append(float(value))

    def sorted(self) -> "DecaySeries":
        order = np.argsort(self.times)
        return DecaySeries(self.name, [self.times[i] for i in order], [self.values[i] for i in order],
                           self.fit, self.wrap_horizon)

    def as_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.asarray(self.times, dtype=float), np.asarray(self.values, dtype=float)

    def max_over_min(self) -> float:
        values = np.asarray(self.values, dtype=float)
        positive = values[values > 0]
        if positive.size == 0:
            return float("nan")
        return float(positive.max() / positive.min())

    def to_rows(self) -> List[dict]:
        return [{"t": t, self.name: value} for t, value in zip(self.times, self.values)]

    def to_dict(self) -> dict:
        return {"name": self.name,
                "fit": self.fit.to_dict() if self.fit else None,
                "wrap_horizon": self.wrap_horizon,
                "samples": len(self.times)}
