from abc import ABC, abstractmethod
from typing import Dict, List, Tuple, Union

from data_classes.fluid_state import FluidState, MadelungState
from observer.interfaces import IPublisher


class ICapillarityModel(ABC):
    """
    Interface for the constitutive bundle of a capillary fluid.
    """

    @abstractmethod
    def ell_of_rho(self, rho):
        """
        Maps densities to l = L(rho).

        Args:
            rho: Density value or array inside J.

        Returns:
            The values of L.
        """
        pass

    @abstractmethod
    def rho_of_ell(self, ell):
        """
        Inverts L.

        Args:
            ell: Value or array inside L(J).

        Returns:
            The densities.
        """
        pass

    @abstractmethod
    def atilde(self, ell):
        """atilde(l) = a(L^{-1}(l)) - 1."""
        pass

    @abstractmethod
    def gtilde(self, ell):
        """gtilde(l) = g(L^{-1}(l))."""
        pass

    @abstractmethod
    def gauge_phi(self, rho, gamma: float):
        """The gauge weight of the high-order energy."""
        pass

    @abstractmethod
    def describe(self) -> Dict[str, object]:
        """
        Returns:
            Dict[str, object]: Report-ready description of the model.
        """
        pass


class ITrajectoryModel(IPublisher):
    """
    Interface for a time-ordered record of solver snapshots that notifies its observers on every append.
    """

    @abstractmethod
    def append_snapshot(self, t: float, state: Union[FluidState, MadelungState]) -> None:
        """
        Records a snapshot and notifies the observers.

        Args:
            t (float): Time stamp.
            state (Union[FluidState, MadelungState]): Snapshot, stored as given.
        """
        pass

    @abstractmethod
    def get_times(self) -> List[float]:
        pass

    @abstractmethod
    def get_states(self) -> List[Union[FluidState, MadelungState]]:
        pass

    @abstractmethod
    def latest(self) -> Tuple[float, Union[FluidState, MadelungState]]:
        pass
