import logging
from typing import Dict, List, Optional, Sequence

import numpy as np

from data_classes.resonance_symbol import ResonanceSymbol
from enums.resonance_label import ResonanceLabel, ResonanceSection

logger = logging.getLogger(__name__)


class ResonanceManager:
    """
    Evaluates bilinear phases |xi|^2 + s1 |eta|^2 + s2 |xi - eta|^2, their eta-gradients and resonance labels.

    Frequencies are arrays whose last axis holds the components.
    """

    def __init__(self, tolerance: float = 1e-10, inverse_ceiling: float = 1e6) -> None:
        self._tolerance = tolerance
        self._inverse_ceiling = inverse_ceiling

    @staticmethod
    def omega_eval(symbol: ResonanceSymbol, xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        eta = np.asarray(eta, dtype=float)
        difference = xi - eta
        return (np.sum(xi ** 2, axis=-1) + symbol.sigma1 * np.sum(eta ** 2, axis=-1)
                + symbol.sigma2 * np.sum(difference ** 2, axis=-1))

    @staticmethod
    def omega_grad_eta(symbol: ResonanceSymbol, xi: np.ndarray, eta: np.ndarray) -> np.ndarray:
        """2 s1 eta - 2 s2 (xi - eta)."""
        xi = np.asarray(xi, dtype=float)
        eta = np.asarray(eta, dtype=float)
        return 2.0 * symbol.sigma1 * eta - 2.0 * symbol.sigma2 * (xi - eta)

    def _labels(self, symbol: ResonanceSymbol, xi: np.ndarray, eta: np.ndarray, tolerance: float) -> np.ndarray:
        xi = np.asarray(xi, dtype=float)
        eta = np.asarray(eta, dtype=float)
        scale = np.sum(xi ** 2, axis=-1) + np.sum(eta ** 2, axis=-1) + np.sum((xi - eta) ** 2, axis=-1)
        length = np.linalg.norm(xi, axis=-1) + np.linalg.norm(eta, axis=-1)
        time = np.abs(self.omega_eval(symbol, xi, eta)) <= tolerance * scale
        space = np.linalg.norm(self.omega_grad_eta(symbol, xi, eta), axis=-1) <= np.sqrt(tolerance) * length
        labels = np.full(time.shape, ResonanceLabel.NONRESONANT, dtype=object)
        labels[time & ~space] = ResonanceLabel.TIME_RESONANT
        labels[space & ~time] = ResonanceLabel.SPACE_RESONANT
        labels[time & space] = ResonanceLabel.SPACETIME_RESONANT
        return labels

    def classify(self, symbol: ResonanceSymbol, xi: Sequence[float], eta: Sequence[float],
                 tolerance: Optional[float] = None) -> ResonanceLabel:
        """
        Labels one frequency pair with relative tolerances, so the label is invariant under scaling.

        Args:
            symbol (ResonanceSymbol): The phase.
            xi (Sequence[float]): Output frequency.
            eta (Sequence[float]): Input frequency.
            tolerance (float, optional): Relative tolerance, defaults to the manager's.

        Returns:
            ResonanceLabel: The label.
        """
        tolerance = self._tolerance if tolerance is None else tolerance
        if tolerance <= 0:
            raise ValueError(f"Tolerance must be positive, got {tolerance}")
        return self._labels(symbol, xi, eta, tolerance).item()

    def classify_many(self, symbol: ResonanceSymbol, xi: np.ndarray, eta: np.ndarray,
                      tolerance: Optional[float] = None) -> np.ndarray:
        tolerance = self._tolerance if tolerance is None else tolerance
        return self._labels(symbol, xi, eta, tolerance)

    def _section_points(self, section: ResonanceSection, extent: float, points: int, dim: int,
                        direction: Sequence[float]):
        axis = np.linspace(-extent, extent, points) if extent > 0 else np.zeros(1)
        first, second = np.meshgrid(axis, axis, indexing="ij")
        xi = np.zeros(first.shape + (dim,))
        eta = np.zeros(first.shape + (dim,))
        if section is ResonanceSection.FIXED_XI:
            unit = np.asarray(direction, dtype=float)
            unit = unit / np.linalg.norm(unit)
            xi[...] = extent * unit
            eta[..., 0] = first
            if dim > 1:
                eta[..., 1] = second
        else:
            xi[..., 0] = first
            eta[..., 0] = second
        if extent == 0:
            return xi[:1, :1], eta[:1, :1]
        return xi, eta

    def resonance_map(self, symbol: ResonanceSymbol, section: ResonanceSection, extent: float = 2.0,
                      points: int = 41, dim: int = 3, direction: Optional[Sequence[float]] = None,
                      tolerance: Optional[float] = None) -> List[Dict[str, object]]:
        """
        Labelled grid over a two-dimensional section of frequency space.

        In the fixed-xi section xi = extent * direction and eta runs over [-extent, extent]^2 in the (e1, e2)
        plane; in the collinear section xi and eta both run along e1. Extent 0 leaves only the origin.

        Returns:
            List[Dict[str, object]]: Rows with xi and eta components, Omega, |grad_eta Omega|,
            min(1/|Omega|, ceiling) and the label.
        """
        tolerance = self._tolerance if tolerance is None else tolerance
        direction = direction if direction is not None else [1.0] + [0.0] * (dim - 1)
        xi, eta = self._section_points(section, extent, points, dim, direction)
        omega = self.omega_eval(symbol, xi, eta)
        gradient = np.linalg.norm(self.omega_grad_eta(symbol, xi, eta), axis=-1)
        with np.errstate(divide="ignore"):
            inverse = np.minimum(np.where(omega != 0, 1.0 / np.abs(omega), np.inf), self._inverse_ceiling)
        labels = self._labels(symbol, xi, eta, tolerance)
        rows = []
        for index in np.ndindex(omega.shape):
            row: Dict[str, object] = {}
            for k in range(dim):
                row[f"xi{k + 1}"] = float(xi[index][k])
            for k in range(dim):
                row[f"eta{k + 1}"] = float(eta[index][k])
            row.update({"omega": float(omega[index]), "grad_eta_norm": float(gradient[index]),
                        "inverse_omega_capped": float(inverse[index]), "label": labels[index].name.lower()})
            rows.append(row)
        logger.debug("Resonance map %s %s with %d points", symbol.signs, section.name, len(rows))
        return rows

    @staticmethod
    def label_counts(rows: List[Dict[str, object]]) -> Dict[str, int]:
        counts = {label.name.lower(): 0 for label in ResonanceLabel}
        for row in rows:
            counts[row["label"]] += 1
        return counts
