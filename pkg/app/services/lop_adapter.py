"""
Locally order-preserving (LOP) adaptation of a mapping.

A global stencil is OP when the mapped weights keep the ordering of the
JS weights for every pair of substencils. OP stencils use the mapped
weights; non-OP stencils fall back to the unnormalized JS weights, so the
normalized result is the JS weights themselves.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from app.exceptions import ContractViolationError
from app.models.scheme import MappingKind
from app.services.mappings import map_triple, map_weight
from app.utils.validators import require_index, require_leading

# Pairs in the order the classification loop visits them
PAIRS = ((0, 1), (0, 2), (1, 2))

DEFAULT_TIE_TOL = 1e-14


@dataclass(frozen=True)
class StencilClassification:
    """
    Attributes:
        is_op: Mapped weights preserve the JS ordering
        failing_pair: First pair (a, b) that breaks it; None when OP
    """
    is_op: bool
    failing_pair: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.is_op == (self.failing_pair is not None):
            raise ContractViolationError("failing_pair must be set exactly when the stencil is non-OP")


def post_index(a: int, b: int, kind: MappingKind, omega_js, ideal_weights):
    """
    (ω_a − ω_b)(g_a(ω_a) − g_b(ω_b)).

    Negative values mark an ordering inversion between substencils a and b.
    """
    a = require_index(a, range(3), "substencil index a")
    b = require_index(b, range(3), "substencil index b")
    omega = require_leading(omega_js, 3, "JS weights")
    d = np.asarray(ideal_weights, dtype=float)

    ga = map_weight(kind, a, d[a], omega[a])
    gb = map_weight(kind, b, d[b], omega[b])
    return (omega[a] - omega[b]) * (ga - gb)


def _pair_ok(omega, mapped, a: int, b: int, tie_tol: float, strict: bool) -> np.ndarray:
    wa, wb = omega[a], omega[b]
    tol = tie_tol * np.maximum(1.0, np.maximum(np.abs(wa), np.abs(wb)))
    tied_w = np.abs(wa - wb) <= tol
    tied_g = np.abs(mapped[a] - mapped[b]) <= tol
    index = (wa - wb) * (mapped[a] - mapped[b])

    if strict:
        return (index > 0) | (tied_w & tied_g)
    return np.where(tied_w, tied_g, index >= 0)


def classify_mapped(
    omega_js,
    mapped,
    tie_tol: float = DEFAULT_TIE_TOL,
    strict: bool = False
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Vectorized classification from precomputed mapped weights.

    Args:
        omega_js: Normalized JS weights, shape (3, ...)
        mapped: g_s(ω_s), shape (3, ...)
        tie_tol: Relative tolerance for equal weights
        strict: Require postINDEX > 0 unless both pairs are tied

    Returns:
        (is_op, failing): boolean mask and the index into PAIRS of the
        first failing pair (-1 where OP)
    """
    omega = np.asarray(omega_js, dtype=float)
    mapped = np.asarray(mapped, dtype=float)

    failing = np.full(omega.shape[1:], -1, dtype=int)
    for p, (a, b) in enumerate(PAIRS):
        bad = ~_pair_ok(omega, mapped, a, b, tie_tol, strict) & (failing < 0)
        failing = np.where(bad, p, failing)

    return failing < 0, failing


def classify_stencil(
    kind: MappingKind,
    omega_js,
    ideal_weights,
    tie_tol: float = DEFAULT_TIE_TOL,
    strict: bool = False
) -> StencilClassification:
    """
    Classify one global stencil as OP or non-OP.

    Args:
        kind: Mapping family
        omega_js: Normalized JS weights of the stencil
        ideal_weights: d_0, d_1, d_2
        tie_tol: Relative tolerance for equal weights
        strict: Literal set membership (postINDEX > 0 or both pairs tied)

    Returns:
        StencilClassification with the first failing pair
    """
    omega = require_leading(omega_js, 3, "JS weights").reshape(3)
    mapped = map_triple(kind, omega, ideal_weights)
    is_op, failing = classify_mapped(omega, mapped, tie_tol, strict)

    if bool(is_op):
        return StencilClassification(True)
    return StencilClassification(False, PAIRS[int(failing)])


def lop_unnormalized(
    kind: MappingKind,
    omega_js,
    alpha_js,
    ideal_weights,
    tie_tol: float = DEFAULT_TIE_TOL,
    strict: bool = False
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Unnormalized LOP weights.

    Returns:
        (alpha_lop, is_op): g_s(ω_s) on OP stencils, α^JS elsewhere
    """
    omega = require_leading(omega_js, 3, "JS weights")
    alpha = require_leading(alpha_js, 3, "JS alpha")
    mapped = map_triple(kind, omega, ideal_weights)
    is_op, _ = classify_mapped(omega, mapped, tie_tol, strict)
    return np.where(is_op, mapped, alpha), is_op


def normalize(weights) -> np.ndarray:
    weights = np.asarray(weights, dtype=float)
    total = weights.sum(axis=0)
    if np.any(total <= 0):
        raise ContractViolationError("cannot normalize weights with a zero sum")
    return weights / total


def lop_weights(
    kind: MappingKind,
    omega_js,
    alpha_js,
    ideal_weights,
    tie_tol: float = DEFAULT_TIE_TOL,
    strict: bool = False
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Normalized LOP weights.

    Returns:
        (omega_lop, is_op); on non-OP stencils omega_lop reproduces ω^JS
    """
    alpha_lop, is_op = lop_unnormalized(kind, omega_js, alpha_js, ideal_weights, tie_tol, strict)
    return normalize(alpha_lop), is_op

