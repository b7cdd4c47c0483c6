"""
Fifth-order WENO reconstruction kernels.

All kernels are vectorized: a window argument has 5 entries along its
leading axis (ū_{j-2} … ū_{j+2}) and any trailing shape; triples have 3
entries along the leading axis. CellWindow / WeightTriple / SmoothnessTriple
instances are accepted wherever arrays are.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
from cachetools import LRUCache, cached

from app.exceptions import ContractViolationError, InvalidInputError
from app.models.scheme import SchemeParams
from app.models.weights import NORMALIZATION_TOLERANCE
from app.utils.validators import require_finite, require_leading

# Candidate interface values u^s_{j+1/2}, rows over ū_{j-2} … ū_{j+2}
SUBSTENCIL_COEFFICIENTS = np.array([
    [1.0 / 3.0, -7.0 / 6.0, 11.0 / 6.0, 0.0, 0.0],
    [0.0, -1.0 / 6.0, 5.0 / 6.0, 1.0 / 3.0, 0.0],
    [0.0, 0.0, 1.0 / 3.0, 5.0 / 6.0, -1.0 / 6.0],
])

IDEAL_WEIGHTS = np.array([0.1, 0.6, 0.3])

# Split parameter for negative linear weights
SPLIT_THETA = 3.0


def _window(window, validate: bool = True) -> np.ndarray:
    arr = require_leading(window, 5, "cell window")
    if validate:
        require_finite(arr, "cell window")
    return arr


def _column(values, ndim: int) -> np.ndarray:
    """Reshape a length-3 vector so it broadcasts against (3, ...) arrays."""
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        return values.reshape((3,) + (1,) * (ndim - 1))
    return values


def substencil_values(window, validate: bool = True) -> np.ndarray:
    """
    Third-order candidate values at x_{j+1/2} from the three substencils.

    Args:
        window: Cell averages, shape (5, ...)
        validate: Check shape and finiteness

    Returns:
        Array of shape (3, ...)
    """
    v = _window(window, validate)
    return np.stack([
        v[0] / 3.0 - 7.0 / 6.0 * v[1] + 11.0 / 6.0 * v[2],
        -v[1] / 6.0 + 5.0 / 6.0 * v[2] + v[3] / 3.0,
        v[2] / 3.0 + 5.0 / 6.0 * v[3] - v[4] / 6.0,
    ])


def smoothness_indicators(window, validate: bool = True) -> np.ndarray:
    """
    Jiang-Shu smoothness indicators β_0, β_1, β_2.

    Returns:
        Array of shape (3, ...), all entries nonnegative
    """
    v = _window(window, validate)
    c = 13.0 / 12.0
    return np.stack([
        c * (v[0] - 2.0 * v[1] + v[2]) ** 2 + 0.25 * (v[0] - 4.0 * v[1] + 3.0 * v[2]) ** 2,
        c * (v[1] - 2.0 * v[2] + v[3]) ** 2 + 0.25 * (v[1] - v[3]) ** 2,
        c * (v[2] - 2.0 * v[3] + v[4]) ** 2 + 0.25 * (3.0 * v[2] - 4.0 * v[3] + v[4]) ** 2,
    ])


def js_weights(
    beta,
    params: SchemeParams = SchemeParams(),
    ideal_weights=None,
    validate: bool = True
) -> Tuple[np.ndarray, np.ndarray]:
    """
    WENO-JS weights.

    Args:
        beta: Smoothness indicators, shape (3, ...)
        params: ε and the ideal weights
        ideal_weights: Overrides params.ideal_weights (point reconstruction)
        validate: Check shape and finiteness

    Returns:
        (alpha, omega): unnormalized α_s = d_s / (ε + β_s)² and ω_s = α_s / Σα
    """
    beta = require_leading(beta, 3, "smoothness indicators")
    if validate:
        require_finite(beta, "smoothness indicators")
        if np.any(beta < 0):
            raise InvalidInputError("smoothness indicators must be nonnegative")

    d = params.ideal_weights if ideal_weights is None else ideal_weights
    alpha = _column(d, beta.ndim) / (params.epsilon + beta) ** 2
    omega = alpha / alpha.sum(axis=0)
    return alpha, omega


def combine(omega, candidates) -> np.ndarray:
    """Σ ω_s u_s without checks."""
    return (np.asarray(omega) * np.asarray(candidates)).sum(axis=0)


def reconstruct_convex(omega, candidates) -> np.ndarray:
    """
    Convex combination of the candidate values.

    Args:
        omega: Normalized weights, shape (3, ...)
        candidates: Candidate values, shape (3, ...)

    Returns:
        Σ ω_s u_s

    Raises:
        ContractViolationError: If the weights are negative or do not sum to 1
    """
    omega = require_finite(require_leading(omega, 3, "weights"), "weights")
    candidates = require_finite(require_leading(candidates, 3, "candidate values"), "candidate values")

    if np.any(omega < 0) or np.any(np.abs(omega.sum(axis=0) - 1.0) > NORMALIZATION_TOLERANCE):
        raise ContractViolationError("reconstruct_convex needs normalized weights")

    return combine(omega, candidates)


def reconstruct_ideal(window, params: SchemeParams = SchemeParams()) -> np.ndarray:
    """Interface value with the ideal linear weights (WENO5-ILW)."""
    candidates = substencil_values(window)
    d = _column(params.ideal_weights, candidates.ndim)
    return combine(d, candidates)


# ----------------------------------------------------------------------
# Point values at arbitrary offsets inside the cell
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class PointStencil:
    """
    Linear reconstruction data for the point x_j + ξΔx.

    Attributes:
        xi: Offset from the cell center in units of Δx
        coefficients: (3, 5) candidate-polynomial rows over the window
        linear_weights: γ_s with Σ γ_s coefficients_s equal to the
            fifth-order row; may be negative
    """
    xi: float
    coefficients: np.ndarray
    linear_weights: np.ndarray

    @property
    def needs_split(self) -> bool:
        return bool(np.any(self.linear_weights < 0))

    def split(self, theta: float = SPLIT_THETA):
        """
        Positive/negative splitting of the linear weights.

        Returns:
            (sigma_plus, d_plus, sigma_minus, d_minus) with
            γ = σ⁺ d⁺ − σ⁻ d⁻ and both d± normalized and positive
        """
        gamma = self.linear_weights
        plus = 0.5 * (gamma + theta * np.abs(gamma))
        minus = plus - gamma
        sigma_plus = plus.sum()
        sigma_minus = minus.sum()
        return sigma_plus, plus / sigma_plus, sigma_minus, minus / sigma_minus


def _cell_moments(offsets: np.ndarray, degree: int) -> np.ndarray:
    """Averages of x^m over the unit cells centered at `offsets`."""
    powers = np.arange(degree + 1)
    upper = (offsets[:, None] + 0.5) ** (powers + 1)
    lower = (offsets[:, None] - 0.5) ** (powers + 1)
    return (upper - lower) / (powers + 1)


def _point_row(offsets: np.ndarray, xi: float) -> np.ndarray:
    """Weights over the cells at `offsets` giving p(ξ) for the matching polynomial."""
    degree = len(offsets) - 1
    moments = _cell_moments(offsets.astype(float), degree)
    monomials = xi ** np.arange(degree + 1)
    return np.linalg.solve(moments.T, monomials)


@cached(cache=LRUCache(maxsize=64))
def point_stencil(xi: float) -> PointStencil:
    """
    Candidate coefficients and linear weights for the point x_j + ξΔx.

    ξ = 1/2 returns the exact interface constants.

    Args:
        xi: Offset in [-1/2, 1/2]

    Returns:
        PointStencil
    """
    xi = float(xi)
    if not -0.5 <= xi <= 0.5:
        raise InvalidInputError(f"point offset must lie in [-1/2, 1/2], got {xi}")

    if xi == 0.5:
        return PointStencil(xi, SUBSTENCIL_COEFFICIENTS.copy(), IDEAL_WEIGHTS.copy())

    coefficients = np.zeros((3, 5))
    for s in range(3):
        offsets = np.arange(s - 2, s + 1)
        coefficients[s, s:s + 3] = _point_row(offsets, xi)

    full_row = _point_row(np.arange(-2, 3), xi)
    linear_weights, *_ = np.linalg.lstsq(coefficients.T, full_row, rcond=None)

    return PointStencil(xi, coefficients, linear_weights)


def candidate_values(window, stencil: PointStencil) -> np.ndarray:
    """Candidate point values of the three substencils, shape (3, ...)."""
    v = np.asarray(window, dtype=float)
    return np.tensordot(stencil.coefficients, v, axes=(1, 0))
