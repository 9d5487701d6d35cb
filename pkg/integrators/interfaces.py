from abc import ABC, abstractmethod
from typing import Union

from data_classes.fluid_state import FluidState, MadelungState
from data_classes.grid import Grid
from model.capillarity_model import CapillarityModel

State = Union[FluidState, MadelungState]


class IStepStrategy(ABC):
    """
    Interface for one time-stepping scheme.
    """

    @abstractmethod
    def step(self, state: State, t: float, dt: float) -> State:
        """
        Advances the state by one step of signed size dt.

        Args:
            state (State): State at time t, not modified.
            t (float): Current time.
            dt (float): Signed step; negative steps integrate backward.

        Returns:
            State: State at time t + dt.
        """
        pass

    @abstractmethod
    def check(self, state: State) -> None:
        """
        Raises DensityRangeViolation if the state left the working interval.
        """
        pass

    @abstractmethod
    def distance(self, first: State, second: State) -> float:
        """Discrete l2 distance of two states."""
        pass

    @abstractmethod
    def size(self, state: State) -> float:
        """Discrete l2 size of a state measured from equilibrium."""
        pass

    @staticmethod
    @abstractmethod
    def stability_dt(model: CapillarityModel, grid: Grid, safety: float, amplitude_ceiling: float) -> float:
        """
        Largest step the explicit part of the scheme tolerates.

        Args:
            model (CapillarityModel): The fluid.
            grid (Grid): The grid.
            safety (float): Safety factor.
            amplitude_ceiling (float): Assumed bound on |l|.

        Returns:
            float: dt_max.
        """
        pass
