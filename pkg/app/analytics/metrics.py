"""
Error norms, convergence orders, increased errors and oscillation metrics.
"""

import math
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from app.exceptions import DomainError, InvalidInputError
from app.models.report import ErrorLevel
from app.utils.validators import require_finite, require_same_shape


def error_norms(
    numerical: np.ndarray,
    exact: np.ndarray,
    h: Union[float, Sequence[float]]
) -> Tuple[float, float]:
    """
    L1 and L∞ norms of the difference of two cell-average fields.

    Args:
        numerical: Numerical solution
        exact: Exact (or reference) solution, same shape
        h: Mesh spacing, or one spacing per axis

    Returns:
        (L1, L∞) with L1 = Π h_i · Σ|diff|
    """
    require_same_shape(numerical, exact)
    diff = np.abs(np.asarray(numerical, dtype=float) - np.asarray(exact, dtype=float))
    cell_size = float(np.prod(np.atleast_1d(np.asarray(h, dtype=float))))
    if diff.size == 0:
        return 0.0, 0.0
    return cell_size * float(diff.sum()), float(diff.max())


def convergence_order(e_coarse: float, e_fine: float, n_coarse: int, n_fine: int) -> float:
    """log(e_coarse / e_fine) / log(N_fine / N_coarse)."""
    if min(e_coarse, e_fine, n_coarse, n_fine) <= 0:
        raise DomainError("convergence_order needs positive errors and grid sizes")
    if n_fine == n_coarse:
        raise DomainError("convergence_order needs two different grid sizes")
    return math.log(e_coarse / e_fine) / math.log(n_fine / n_coarse)


def increased_errors(l_scheme: float, l_ilw: float) -> float:
    """(L_Y − L_ILW) / L_ILW × 100."""
    if not l_ilw > 0:
        raise DomainError(f"increased errors need a positive ILW baseline, got {l_ilw}")
    return (l_scheme - l_ilw) / l_ilw * 100.0


def overshoot_metric(field: np.ndarray, lower: float, upper: float) -> float:
    """max(0, max(field) − upper, lower − min(field))."""
    if not (math.isfinite(lower) and math.isfinite(upper)):
        raise InvalidInputError("overshoot bounds must be finite")
    values = require_finite(field, "field")
    return max(0.0, float(values.max()) - upper, lower - float(values.min()))


def post_shock_oscillation(values: np.ndarray, window: int = 9, exclude: int = 6) -> float:
    """
    Amplitude of oscillations around a smoothed baseline.

    The baseline is a centered rolling mean; cells within `exclude` of the
    steepest jump are ignored so the captured shock itself does not count.

    Args:
        values: 1D profile, e.g. a density slice
        window: Rolling window in cells
        exclude: Half-width of the band skipped around the shock

    Returns:
        Maximum absolute deviation from the baseline outside the band
    """
    series = pd.Series(require_finite(values, "profile"))
    baseline = series.rolling(window, center=True, min_periods=1).mean()
    deviation = (series - baseline).abs()

    shock = int(np.argmax(np.abs(np.diff(series.to_numpy())))) if len(series) > 1 else 0
    band = (deviation.index >= shock - exclude) & (deviation.index <= shock + 1 + exclude)
    outside = deviation[~band]
    return float(outside.max()) if len(outside) else 0.0


def restrict_to_grid(fine_values: np.ndarray, fine_edges: np.ndarray, coarse_edges: np.ndarray) -> np.ndarray:
    """
    Exact averages of a piecewise-constant fine solution over coarse cells.

    Args:
        fine_values: Fine cell averages, shape (..., N_fine)
        fine_edges: N_fine + 1 fine cell edges
        coarse_edges: Coarse cell edges inside [fine_edges[0], fine_edges[-1]]

    Returns:
        Coarse cell averages, shape (..., N_coarse)
    """
    fine_values = np.asarray(fine_values, dtype=float)
    widths = np.diff(fine_edges)
    cumulative = np.concatenate(
        [np.zeros(fine_values.shape[:-1] + (1,)), np.cumsum(fine_values * widths, axis=-1)],
        axis=-1
    )
    flat = cumulative.reshape(-1, cumulative.shape[-1])
    at_coarse = np.stack([np.interp(coarse_edges, fine_edges, row) for row in flat])
    averages = np.diff(at_coarse, axis=-1) / np.diff(coarse_edges)
    return averages.reshape(fine_values.shape[:-1] + (len(coarse_edges) - 1,))


def error_levels(
    sizes: Sequence[Tuple[int, ...]],
    errors: Sequence[Tuple[float, float]],
    baseline: Optional[Sequence[Tuple[float, float]]] = None,
    time: Optional[float] = None
) -> List[ErrorLevel]:
    """
    Error table rows with orders between consecutive levels.

    Orders use the first axis size; χ is filled when ILW baseline errors
    are supplied for the same levels.
    """
    levels = []
    for index, (n, (l1, linf)) in enumerate(zip(sizes, errors)):
        level = ErrorLevel(tuple(n), l1, linf, time=time)
        if index > 0:
            n_prev = sizes[index - 1][0]
            prev_l1, prev_linf = errors[index - 1]
            if min(prev_l1, l1) > 0:
                level.l1_order = convergence_order(prev_l1, l1, n_prev, n[0])
            if min(prev_linf, linf) > 0:
                level.linf_order = convergence_order(prev_linf, linf, n_prev, n[0])
        if baseline is not None:
            base_l1, base_linf = baseline[index]
            if base_l1 > 0:
                level.chi1 = increased_errors(l1, base_l1)
            if base_linf > 0:
                level.chi_inf = increased_errors(linf, base_linf)
        levels.append(level)
    return levels
