"""
Scheme-level reconstruction: JS weights, mapping and LOP adaptation
combined into interface and point values.

This is what the solvers call. The kernels underneath are pure; nothing
here validates finiteness, the time integrator checks every stage.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from app.models.scheme import Scheme
from app.services.lop_adapter import classify_mapped, lop_weights, normalize
from app.services.mappings import map_triple
from app.services.weno_core import (
    PointStencil, candidate_values, combine, js_weights, point_stencil,
    smoothness_indicators, substencil_values
)


@dataclass
class WeightDiagnostics:
    """
    Weights of every stencil of a reconstruction call.

    Attributes:
        omega_js: Normalized JS weights, shape (3, ...)
        omega: Normalized weights actually used, shape (3, ...)
        is_op: OP classification of each stencil
    """
    omega_js: np.ndarray
    omega: np.ndarray
    is_op: np.ndarray


def nonlinear_weights(
    beta: np.ndarray,
    scheme: Scheme,
    ideal_weights=None,
    classify: bool = False
) -> WeightDiagnostics:
    """
    Weights of the selected scheme from smoothness indicators.

    Args:
        beta: Smoothness indicators, shape (3, ...)
        scheme: Reconstruction scheme
        ideal_weights: Positive ideal weights; defaults to scheme.params
        classify: Also classify stencils for plain (non-LOP) schemes

    Returns:
        WeightDiagnostics
    """
    d = np.asarray(scheme.params.ideal_weights if ideal_weights is None else ideal_weights)
    shape = beta.shape[1:]

    if scheme.ideal:
        omega = np.broadcast_to(d.reshape((3,) + (1,) * len(shape)), beta.shape)
        return WeightDiagnostics(omega, omega, np.ones(shape, dtype=bool))

    alpha, omega_js = js_weights(beta, scheme.params, d, validate=False)
    kind = scheme.mapping

    if scheme.lop:
        omega, is_op = lop_weights(kind, omega_js, alpha, d, scheme.tie_tol, scheme.strict)
        return WeightDiagnostics(omega_js, omega, is_op)

    if kind.is_identity:
        return WeightDiagnostics(omega_js, omega_js, np.ones(shape, dtype=bool))

    mapped = map_triple(kind, omega_js, d)
    if classify:
        is_op, _ = classify_mapped(omega_js, mapped, scheme.tie_tol, scheme.strict)
    else:
        is_op = np.ones(shape, dtype=bool)
    return WeightDiagnostics(omega_js, normalize(mapped), is_op)


def reconstruct_interface(
    window: np.ndarray,
    scheme: Scheme,
    diagnostics: bool = False
):
    """
    Value at x_{j+1/2} from the five cells around x_j.

    Args:
        window: Cell values, shape (5, ...)
        scheme: Reconstruction scheme
        diagnostics: Also return the WeightDiagnostics

    Returns:
        Interface values of shape (...), optionally with diagnostics
    """
    candidates = substencil_values(window, validate=False)
    beta = smoothness_indicators(window, validate=False)
    weights = nonlinear_weights(beta, scheme, classify=diagnostics)
    value = combine(weights.omega, candidates)
    if diagnostics:
        return value, weights
    return value


def reconstruct_point(
    window: np.ndarray,
    scheme: Scheme,
    xi: float,
    stencil: Optional[PointStencil] = None
) -> np.ndarray:
    """
    Value at x_j + ξΔx from the five cells around x_j.

    Negative linear weights are handled by splitting them into two positive
    groups, each weighted and mapped with its own ideal weights.

    Args:
        window: Cell values, shape (5, ...)
        scheme: Reconstruction scheme
        xi: Offset from the cell center in units of Δx
        stencil: Precomputed point_stencil(xi)

    Returns:
        Point values of shape (...)
    """
    stencil = stencil or point_stencil(xi)
    candidates = candidate_values(window, stencil)

    if scheme.ideal:
        gamma = stencil.linear_weights.reshape((3,) + (1,) * (candidates.ndim - 1))
        return combine(gamma, candidates)

    beta = smoothness_indicators(window, validate=False)

    if not stencil.needs_split:
        omega = nonlinear_weights(beta, scheme, stencil.linear_weights).omega
        return combine(omega, candidates)

    sigma_plus, d_plus, sigma_minus, d_minus = stencil.split()
    omega_plus = nonlinear_weights(beta, scheme, d_plus).omega
    omega_minus = nonlinear_weights(beta, scheme, d_minus).omega
    return sigma_plus * combine(omega_plus, candidates) - sigma_minus * combine(omega_minus, candidates)
