"""
Ideal-gas Euler equations in 1D and 2D.

Conserved arrays have the variables on the leading axis: (ρ, ρu, E) in 1D
and (ρ, ρu, ρv, E) in 2D. Eigensystems are for the x-normal flux; the 2D
solver reaches the y direction by swapping axes and momenta.
"""

from typing import Optional, Tuple

import numpy as np

from app.exceptions import DivergenceError, InvalidInputError

GAMMA = 1.4


def _velocities(U: np.ndarray) -> Tuple[np.ndarray, ...]:
    rho = U[0]
    return tuple(U[i] / rho for i in range(1, U.shape[0] - 1))


def pressure(U: np.ndarray, gamma: float = GAMMA) -> np.ndarray:
    """p = (γ − 1)(E − ½ρ|u|²)."""
    U = np.asarray(U, dtype=float)
    kinetic = sum(U[i] ** 2 for i in range(1, U.shape[0] - 1)) / U[0]
    return (gamma - 1.0) * (U[-1] - 0.5 * kinetic)


def primitive(U: np.ndarray, gamma: float = GAMMA) -> np.ndarray:
    """(ρ, u, p) or (ρ, u, v, p) stacked on the leading axis."""
    U = np.asarray(U, dtype=float)
    return np.stack((U[0],) + _velocities(U) + (pressure(U, gamma),))


def conservative(W: np.ndarray, gamma: float = GAMMA) -> np.ndarray:
    """Inverse of primitive."""
    W = np.asarray(W, dtype=float)
    rho, p = W[0], W[-1]
    velocities = [W[i] for i in range(1, W.shape[0] - 1)]
    energy = p / (gamma - 1.0) + 0.5 * rho * sum(v ** 2 for v in velocities)
    return np.stack([rho] + [rho * v for v in velocities] + [energy])


def sound_speed(U: np.ndarray, gamma: float = GAMMA) -> np.ndarray:
    U = np.asarray(U, dtype=float)
    return np.sqrt(gamma * pressure(U, gamma) / U[0])


def first_inadmissible(U: np.ndarray, gamma: float = GAMMA) -> Optional[int]:
    """Flat cell index of the first cell with ρ ≤ 0 or p ≤ 0, None if all admissible."""
    U = np.asarray(U, dtype=float)
    with np.errstate(invalid='ignore', divide='ignore'):
        bad = ~((U[0] > 0) & (pressure(U, gamma) > 0))
    if not np.any(bad):
        return None
    return int(np.flatnonzero(bad.reshape(-1))[0])


def require_admissible(U: np.ndarray, gamma: float = GAMMA, what: str = "state") -> None:
    cell = first_inadmissible(U, gamma)
    if cell is not None:
        raise DivergenceError(f"inadmissible {what} (non-positive density or pressure)", cell=cell)


def flux_x(U: np.ndarray, gamma: float = GAMMA) -> np.ndarray:
    """Physical flux in the x direction."""
    U = np.asarray(U, dtype=float)
    p = pressure(U, gamma)
    u = U[1] / U[0]
    flux = [U[1], U[1] * u + p]
    for i in range(2, U.shape[0] - 1):
        flux.append(U[i] * u)
    flux.append((U[-1] + p) * u)
    return np.stack(flux)


def max_wave_speed(U: np.ndarray, gamma: float = GAMMA, axis: int = 0) -> float:
    """
    max(|u_axis| + c) over all cells.

    Args:
        U: Conserved variables
        gamma: Ratio of specific heats
        axis: Velocity component (0 for x, 1 for y)
    """
    U = np.asarray(U, dtype=float)
    velocity = U[1 + axis] / U[0]
    return float(np.max(np.abs(velocity) + sound_speed(U, gamma)))


def roe_average(UL: np.ndarray, UR: np.ndarray, gamma: float = GAMMA):
    """
    Roe-averaged velocities, enthalpy and sound speed.

    Returns:
        (velocities, H, c) with velocities a tuple of arrays
    """
    sl = np.sqrt(UL[0])
    sr = np.sqrt(UR[0])
    total = sl + sr

    velocities = tuple(
        (sl * vl + sr * vr) / total for vl, vr in zip(_velocities(UL), _velocities(UR))
    )
    hl = (UL[-1] + pressure(UL, gamma)) / UL[0]
    hr = (UR[-1] + pressure(UR, gamma)) / UR[0]
    H = (sl * hl + sr * hr) / total

    c2 = (gamma - 1.0) * (H - 0.5 * sum(v ** 2 for v in velocities))
    if np.any(c2 <= 0):
        raise DivergenceError("Roe average has no real sound speed",
                              cell=int(np.flatnonzero(np.reshape(c2 <= 0, -1))[0]))
    return velocities, H, np.sqrt(c2)


def char_basis(UL: np.ndarray, UR: np.ndarray, gamma: float = GAMMA):
    """
    Left/right eigenvectors of the x-normal flux Jacobian at the Roe state.

    Args:
        UL, UR: Conserved states on either side, shape (m, ...) with m = 3 or 4
        gamma: Ratio of specific heats

    Returns:
        (L, R, eigenvalues) with L, R of shape (..., m, m), L @ R = I,
        and eigenvalues of shape (..., m) in ascending wave order

    Raises:
        DivergenceError: If either state is inadmissible
    """
    UL = np.asarray(UL, dtype=float)
    UR = np.asarray(UR, dtype=float)
    m = UL.shape[0]
    if m not in (3, 4) or UR.shape != UL.shape:
        raise InvalidInputError(f"char_basis needs matching (3, ...) or (4, ...) states, got {UL.shape}, {UR.shape}")
    require_admissible(UL, gamma, "left state")
    require_admissible(UR, gamma, "right state")

    velocities, H, c = roe_average(UL, UR, gamma)
    u = velocities[0]
    q2 = sum(v ** 2 for v in velocities)
    b1 = (gamma - 1.0) / c ** 2
    b2 = 0.5 * b1 * q2
    one = np.ones_like(u)
    zero = np.zeros_like(u)

    if m == 3:
        R = np.stack([
            np.stack([one, one, one], axis=-1),
            np.stack([u - c, u, u + c], axis=-1),
            np.stack([H - u * c, 0.5 * q2, H + u * c], axis=-1),
        ], axis=-2)
        L = np.stack([
            0.5 * np.stack([b2 + u / c, -(b1 * u + 1.0 / c), b1 * one], axis=-1),
            np.stack([1.0 - b2, b1 * u, -b1 * one], axis=-1),
            0.5 * np.stack([b2 - u / c, -(b1 * u - 1.0 / c), b1 * one], axis=-1),
        ], axis=-2)
        eigenvalues = np.stack([u - c, u, u + c], axis=-1)
        return L, R, eigenvalues

    v = velocities[1]
    R = np.stack([
        np.stack([one, one, zero, one], axis=-1),
        np.stack([u - c, u, zero, u + c], axis=-1),
        np.stack([v, v, one, v], axis=-1),
        np.stack([H - u * c, 0.5 * q2, v, H + u * c], axis=-1),
    ], axis=-2)
    L = np.stack([
        0.5 * np.stack([b2 + u / c, -b1 * u - 1.0 / c, -b1 * v, b1 * one], axis=-1),
        np.stack([1.0 - b2, b1 * u, b1 * v, -b1 * one], axis=-1),
        np.stack([-v, zero, one, zero], axis=-1),
        0.5 * np.stack([b2 - u / c, -b1 * u + 1.0 / c, -b1 * v, b1 * one], axis=-1),
    ], axis=-2)
    eigenvalues = np.stack([u - c, u, u, u + c], axis=-1)
    return L, R, eigenvalues


def project(matrices: np.ndarray, values: np.ndarray) -> np.ndarray:
    """
    Apply per-face matrices to per-face vectors.

    Args:
        matrices: Shape (..., m, m)
        values: Shape (k, m, ...) or (m, ...); k indexes stencil cells

    Returns:
        Same shape as values
    """
    if values.ndim == matrices.ndim - 1:
        return np.einsum('...ij,j...->i...', matrices, values)
    return np.einsum('...ij,kj...->ki...', matrices, values)
