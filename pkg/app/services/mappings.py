"""
Mapping functions g_s(ω) of the mapped WENO schemes.

Every mapping takes the ideal weight d_s of its substencil and satisfies
g(0) = 0, g(d) = d, g(1) = 1 and is non-decreasing on [0, 1]. The
functions are vectorized over ω; d may be a scalar or broadcast against ω.
"""

import numpy as np

from app.exceptions import DomainError
from app.models.scheme import MappingFamily, MappingKind


def sgm(x, delta: float, A: float, k: int):
    """
    Smoothed sign function of the ACM mapping.

    x/|x| for |x| ≥ δ; x / ((A(δ² − x²))^{k+3} + |x|) inside the band,
    which is 0 at x = 0.
    """
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    inner = (A * np.maximum(delta * delta - x * x, 0.0)) ** (k + 3) + ax
    with np.errstate(invalid='ignore', divide='ignore'):
        band = np.where(inner > 0, x / np.where(inner > 0, inner, 1.0), 0.0)
    result = np.where(ax >= delta, np.sign(x), band)
    return result if result.ndim else float(result)


def _m(omega, d):
    return omega * (d + d * d - 3.0 * d * omega + omega * omega) / (d * d + (1.0 - 2.0 * d) * omega)


def _pm(omega, d, k):
    left = omega <= d
    c1 = np.where(left, (-1.0) ** k * (k + 1) / d ** (k + 1), -(k + 1) / (1.0 - d) ** (k + 1))
    c2 = np.where(left, d / (k + 1), (d - (k + 2)) / (k + 1))
    return c1 * (omega - d) ** (k + 1) * (omega + c2) + d


def _im(omega, d, k, A):
    diff = omega - d
    return d + diff ** (k + 1) * A / (diff ** k * A + omega * (1.0 - omega))


def _ppm5(omega, d):
    b = 1.0 / (d - 1.0)
    left = d * (1.0 + (omega / d - 1.0) ** 5)
    right = d + b ** 4 * (omega - d) ** 5
    return np.where(omega <= d, left, right)


def _rm260(omega, d):
    a0 = d ** 6
    a1 = -7.0 * d ** 5
    a2 = 21.0 * d ** 4
    a3 = (1.0 - d) ** 6 - (a0 + a1 + a2)
    return d + (omega - d) ** 7 / (a0 + a1 * omega + a2 * omega ** 2 + a3 * omega ** 3)


def _acm(omega, d, kind: MappingKind):
    cfs = d * kind.cfs_factor
    cfs_bar = 1.0 - (1.0 - d) * kind.cfs_bar_factor
    left = 0.5 * d * sgm(omega - cfs, kind.delta, kind.A, kind.k) + 0.5 * d
    right = 0.5 * (1.0 - d) * sgm(omega - cfs_bar, kind.delta, kind.A, kind.k) + 0.5 * (1.0 + d)
    return np.where(omega <= d, left, right)


def map_weight(kind: MappingKind, s: int, d, omega):
    """
    Evaluate the mapping of substencil s.

    Args:
        kind: Mapping family and parameters
        s: Substencil index, used in error messages
        d: Ideal weight of substencil s
        omega: Normalized JS weight(s) in [0, 1]

    Returns:
        g_s(ω), same shape as omega

    Raises:
        DomainError: If any ω lies outside [0, 1]
    """
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0.0) or np.any(omega > 1.0) or np.any(np.isnan(omega)):
        raise DomainError(f"mapping of substencil {s} needs weights in [0, 1]")

    d = np.asarray(d, dtype=float)
    family = kind.family

    if family == MappingFamily.JS:
        result = omega.copy()
    elif family == MappingFamily.M:
        result = _m(omega, d)
    elif family == MappingFamily.PM:
        result = _pm(omega, d, kind.k)
    elif family == MappingFamily.IM:
        result = _im(omega, d, kind.k, kind.A)
    elif family == MappingFamily.PPM5:
        result = _ppm5(omega, d)
    elif family == MappingFamily.RM260:
        result = _rm260(omega, d)
    else:
        result = _acm(omega, d, kind)

    # g maps [0, 1] into [0, 1]
    result = np.clip(np.asarray(result, dtype=float), 0.0, 1.0)
    return result if result.ndim else float(result)


def map_triple(kind: MappingKind, omega, ideal_weights) -> np.ndarray:
    """
    Map the three weights of each stencil with their own ideal weights.

    Args:
        kind: Mapping family and parameters
        omega: Normalized weights, shape (3, ...)
        ideal_weights: d_s, shape (3,) or broadcastable to omega

    Returns:
        Array (g_0(ω_0), g_1(ω_1), g_2(ω_2)), shape (3, ...)
    """
    omega = np.asarray(omega, dtype=float)
    d = np.asarray(ideal_weights, dtype=float)
    return np.stack([
        np.asarray(map_weight(kind, s, d[s], omega[s]), dtype=float) for s in range(3)
    ])
