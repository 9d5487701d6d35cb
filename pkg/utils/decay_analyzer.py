import logging
from typing import Optional, Tuple

import numpy as np

from data_classes.decay_series import DecayFit, DecaySeries
from exceptions.insufficient_samples import InsufficientSamplesError

logger = logging.getLogger(__name__)

WINDOW_SLACK = 1e-9


class DecayAnalyzer:
    """
    Least-squares power-law fits of decay series on declared windows.
    """

    def __init__(self, min_samples: int = 5) -> None:
        self._min_samples = min_samples

    def decay_fit(self, series: DecaySeries, window: Tuple[float, float]) -> DecayFit:
        """
        Fits log(value) = slope log(t) + intercept on the positive samples inside the window.

        Args:
            series (DecaySeries): The samples.
            window (Tuple[float, float]): Closed time window.

        Returns:
            DecayFit: Slope, intercept and RMS log-misfit.

        Raises:
            InsufficientSamplesError: If fewer than min_samples positive samples lie in the window.
        """
        times, values = series.as_arrays()
        low, high = window
        inside = (times >= low - WINDOW_SLACK) & (times <= high + WINDOW_SLACK) & (values > 0) & np.isfinite(values)
        count = int(np.count_nonzero(inside))
        if count < self._min_samples:
            raise InsufficientSamplesError(
                f"Series '{series.name}' has {count} positive samples in [{low:.4g}, {high:.4g}], "
                f"needs {self._min_samples}")
        log_t = np.log(times[inside])
        log_v = np.log(values[inside])
        slope, intercept = np.polyfit(log_t, log_v, 1)
        misfit = log_v - (slope * log_t + intercept)
        residual = float(np.sqrt(np.mean(misfit ** 2)))
        return DecayFit(float(slope), float(intercept), residual, (float(low), float(high)), count)

    def fit_series(self, series: DecaySeries, window: Tuple[float, float]) -> Optional[DecayFit]:
        """
        Attaches a fit to the series, or leaves it unfitted with a warning when samples are missing.
        """
        try:
            series.fit = self.decay_fit(series, window)
        except InsufficientSamplesError as error:
            logger.warning("No fit for %s: %s", series.name, error)
            series.fit = None
        return series.fit
