from abc import ABC, abstractmethod
from typing import Dict, List, Sequence, Tuple

import numpy as np

from data_classes.bernstein_report import BernsteinReport
from data_classes.besov_index import BesovIndex
from data_classes.bony_decomposition import BonyDecomposition
from data_classes.spectral_field import SpectralField


class ISpectralManager(ABC):
    """
    Interface for the spectral substrate of one periodic grid.
    """

    @abstractmethod
    def to_fourier(self, field: SpectralField) -> SpectralField:
        """
        Converts a field to its unitary Fourier representation.

        Args:
            field (SpectralField): Field in any representation.

        Returns:
            SpectralField: The Fourier representation.
        """
        pass

    @abstractmethod
    def to_physical(self, field: SpectralField) -> SpectralField:
        """
        Converts a field to its physical representation.

        Args:
            field (SpectralField): Field in any representation.

        Returns:
            SpectralField: The physical representation.
        """
        pass

    @abstractmethod
    def derivative(self, field, multi_index: Sequence[int]):
        pass

    @abstractmethod
    def free_propagate(self, field, t: float):
        pass

    @abstractmethod
    def sobolev_norm(self, field, s: float, homogeneous: bool = False) -> float:
        pass

    @abstractmethod
    def lebesgue_norm(self, field, p: float) -> float:
        pass


class ILittlewoodPaleyManager(ABC):
    """
    Interface for dyadic decompositions and Besov machinery.
    """

    @abstractmethod
    def dyadic_block(self, field, j: int):
        pass

    @abstractmethod
    def low_pass(self, field, j: int):
        pass

    @abstractmethod
    def besov_norm(self, field, index: BesovIndex) -> float:
        pass

    @abstractmethod
    def bony_decompose(self, first: np.ndarray, second: np.ndarray) -> BonyDecomposition:
        pass

    @abstractmethod
    def bernstein_check(self, block, j: int, p: float, q: float) -> BernsteinReport:
        pass
