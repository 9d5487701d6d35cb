import logging
from typing import Dict, List, Union

import numpy as np

from data_classes.bernstein_report import BernsteinReport
from data_classes.besov_index import BesovIndex
from data_classes.bony_decomposition import BonyDecomposition
from data_classes.dyadic_cutoffs import DyadicCutoffs, chi, ring_bump
from data_classes.spectral_field import SpectralField
from exceptions.degenerate_input import DegenerateInputError
from utils.interfaces import ILittlewoodPaleyManager
from utils.spectral_manager import ZERO_MODE_RTOL, SpectralManager

logger = logging.getLogger(__name__)

FieldLike = Union[SpectralField, np.ndarray]


class LittlewoodPaleyManager(ILittlewoodPaleyManager):
    """
    Homogeneous dyadic blocks, Besov norms and the paraproduct split on the grid of a SpectralManager.
    """

    def __init__(self, spectral_manager: SpectralManager) -> None:
        self._spectral = spectral_manager
        grid = spectral_manager.grid
        xi = grid.xi_norm
        self._cutoffs = DyadicCutoffs.for_span(float(xi[xi > 0].min()), float(xi.max()))
        self._rings: Dict[int, np.ndarray] = {}
        logger.debug("Dyadic blocks j in [%d, %d]", self._cutoffs.j_min, self._cutoffs.j_max)

    @property
    def cutoffs(self) -> DyadicCutoffs:
        return self._cutoffs

    @property
    def j_range(self) -> List[int]:
        return self._cutoffs.j_range

    def ring_multiplier(self, j: int) -> np.ndarray:
        if j not in self._rings:
            self._rings[j] = ring_bump(2.0 ** (-j) * self._spectral.grid.xi_norm)
        return self._rings[j]

    def low_pass_multiplier(self, j: int) -> np.ndarray:
        return chi(2.0 ** (-j) * self._spectral.grid.xi_norm)

    def dyadic_block(self, field: FieldLike, j: int) -> FieldLike:
        """
        Applies phi_ring(2^{-j} xi). Blocks outside the lattice range give a zero field.
        """
        if j not in self._cutoffs:
            return self._spectral.apply_multiplier(field, np.zeros(self._spectral.grid.shape))
        return self._spectral.apply_multiplier(field, self.ring_multiplier(j))

    def low_pass(self, field: FieldLike, j: int) -> FieldLike:
        """Applies chi(2^{-j} xi); the zero mode passes unchanged."""
        return self._spectral.apply_multiplier(field, self.low_pass_multiplier(j))

    def blocks(self, field: FieldLike) -> Dict[int, FieldLike]:
        return {j: self.dyadic_block(field, j) for j in self.j_range}

    def partition_residual(self) -> float:
        """
        Maximal deviation of sum_j phi_ring(2^{-j} xi) from 1 over the nonzero lattice points.
        """
        total = sum(self.ring_multiplier(j) for j in self.j_range)
        nonzero = self._spectral.grid.xi_norm > 0
        return float(np.max(np.abs(total[nonzero] - 1.0)))

    def _check_zero_mode(self, field: FieldLike, s: float) -> None:
        if s >= 0:
            return
        coefficients = self._spectral.coefficients(field)
        zero = abs(coefficients.flat[0])
        if zero > ZERO_MODE_RTOL * max(float(np.linalg.norm(coefficients)), 1e-300):
            raise DegenerateInputError(
                f"Besov norm with s = {s} needs a vanishing zero mode, got |f_hat(0)| = {zero:.3e}")

    def block_norms(self, field: FieldLike, p: float) -> Dict[int, float]:
        return {j: self._spectral.lebesgue_norm(block, p) for j, block in self.blocks(field).items()}

    def besov_norm(self, field: FieldLike, index: BesovIndex) -> float:
        """
        Homogeneous Besov norm (sum_j (2^{js} ||Delta_j f||_{L^p})^r)^{1/r}.

        Args:
            field (FieldLike): Input field.
            index (BesovIndex): The (s, p, r) triple.

        Returns:
            float: The norm.

        Raises:
            DegenerateInputError: If s < 0 and the zero mode does not vanish.
        """
        self._check_zero_mode(field, index.s)
        weighted = np.array([2.0 ** (j * index.s) * norm
                             for j, norm in self.block_norms(field, index.p).items()])
        if np.isinf(index.r):
            return float(weighted.max(initial=0.0))
        return float(np.sum(weighted ** index.r) ** (1.0 / index.r))

    def inhomogeneous_b11_norm(self, field: FieldLike) -> float:
        """
        B^1_{1,1} as ||low_pass(f, j0)||_{L^1} + sum_{j >= j0} 2^j ||Delta_j f||_{L^1}, j0 = j_min.
        """
        j0 = self._cutoffs.j_min
        total = self._spectral.lebesgue_norm(self.low_pass(field, j0), 1)
        for j, norm in self.block_norms(field, 1).items():
            if j >= j0:
                total += 2.0 ** j * norm
        return float(total)

    def bony_decompose(self, first: np.ndarray, second: np.ndarray) -> BonyDecomposition:
        """
        Splits first * second into T_first second + R + T_second first + mean(first) mean(second).

        The low-pass factors include the zero mode, so the split is exact in physical space.

        Args:
            first (np.ndarray): Physical-space factor f.
            second (np.ndarray): Physical-space factor g on the same grid.

        Returns:
            BonyDecomposition: The three parts and the zero-mode correction.
        """
        first = np.asarray(first, dtype=np.complex128)
        second = np.asarray(second, dtype=np.complex128)
        if first.shape != second.shape:
            raise ValueError(f"Factors live on different grids: {first.shape} vs {second.shape}")
        blocks_f = self.blocks(first)
        blocks_g = self.blocks(second)
        zero = np.zeros_like(first)
        paraproduct_fg = np.zeros_like(first)
        paraproduct_gf = np.zeros_like(first)
        remainder = np.zeros_like(first)
        for j in self.j_range:
            paraproduct_fg += self.low_pass(first, j - 1) * blocks_g[j]
            paraproduct_gf += self.low_pass(second, j - 1) * blocks_f[j]
            neighbourhood = blocks_g.get(j - 1, zero) + blocks_g[j] + blocks_g.get(j + 1, zero)
            remainder += blocks_f[j] * neighbourhood
        correction = complex(np.mean(first) * np.mean(second))
        return BonyDecomposition(paraproduct_fg, remainder, paraproduct_gf, correction)

    def paraproduct_bound_ratio(self, first: np.ndarray, second: np.ndarray) -> float:
        """||T_a b||_{L^2} / (||a||_{L^inf} ||b||_{L^2})."""
        parts = self.bony_decompose(first, second)
        denominator = self._spectral.lebesgue_norm(first, np.inf) * self._spectral.lebesgue_norm(second, 2)
        if denominator == 0:
            return 0.0
        return self._spectral.lebesgue_norm(parts.paraproduct_fg, 2) / denominator

    def interpolation_ratio(self, field: FieldLike, s1: float, s2: float, theta: float, p: float = 2.0) -> float:
        """
        ||f||_{B^{theta s1 + (1-theta) s2}_{p,inf}} / (||f||_{B^{s1}_{p,inf}}^theta ||f||_{B^{s2}_{p,inf}}^{1-theta}).
        """
        middle = self.besov_norm(field, BesovIndex(theta * s1 + (1 - theta) * s2, p, np.inf))
        low = self.besov_norm(field, BesovIndex(s1, p, np.inf))
        high = self.besov_norm(field, BesovIndex(s2, p, np.inf))
        if low == 0 or high == 0:
            return 0.0
        return middle / (low ** theta * high ** (1 - theta))

    def bernstein_check(self, block: FieldLike, j: int, p: float, q: float) -> BernsteinReport:
        """
        Measures both Bernstein ratios of a field supported in the shell of block j.

        Args:
            block (FieldLike): Output of dyadic_block at j.
            j (int): Block index.
            p (float): Lower integrability.
            q (float): Upper integrability, q >= p.

        Returns:
            BernsteinReport: Embedding and derivative ratios.
        """
        if q < p:
            raise ValueError(f"Bernstein check needs q >= p, got p={p}, q={q}")
        dim = self._spectral.grid.dim
        norm_p = self._spectral.lebesgue_norm(block, p)
        if norm_p == 0:
            return BernsteinReport(j, p, q, 0.0, 0.0)
        inverse_q = 0.0 if np.isinf(q) else 1.0 / q
        inverse_p = 0.0 if np.isinf(p) else 1.0 / p
        norm_q = self._spectral.lebesgue_norm(block, q)
        embedding = norm_q / (2.0 ** (dim * j * (inverse_p - inverse_q)) * norm_p)
        data = self._spectral.physical_data(block)
        gradient = self._spectral.gradient(np.asarray(data, dtype=np.complex128))
        modulus = np.sqrt(sum(np.abs(component) ** 2 for component in gradient))
        derivative = self._spectral.lebesgue_norm(modulus, p) / (2.0 ** j * norm_p)
        return BernsteinReport(j, p, q, float(embedding), float(derivative))
