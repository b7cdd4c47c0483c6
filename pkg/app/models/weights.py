"""
Small value types for a single global stencil.

The reconstruction kernels are vectorized and accept plain arrays whose
leading axis indexes cells (5) or substencils (3). These types carry the
per-stencil invariants and convert to arrays through ``__array__`` so they
can be passed to the kernels directly.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.exceptions import ContractViolationError, InvalidInputError

NORMALIZATION_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CellWindow:
    """Five cell averages ū_{j-2} … ū_{j+2}, left to right."""
    values: Tuple[float, float, float, float, float]

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) != 5:
            raise InvalidInputError(f"CellWindow needs 5 values, got {len(values)}")
        if not all(np.isfinite(values)):
            raise InvalidInputError("CellWindow values must be finite")
        object.__setattr__(self, 'values', values)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.values, dtype=dtype or float)


@dataclass(frozen=True)
class WeightTriple:
    """
    Three per-substencil weights of one global stencil.

    Attributes:
        w0, w1, w2: Nonnegative finite weights
        normalized: Whether w0 + w1 + w2 = 1 is guaranteed
    """
    w0: float
    w1: float
    w2: float
    normalized: bool = False

    def __post_init__(self):
        values = (float(self.w0), float(self.w1), float(self.w2))
        if not all(np.isfinite(values)) or min(values) < 0.0:
            raise InvalidInputError(f"weights must be finite and nonnegative, got {values}")
        if self.normalized and abs(sum(values) - 1.0) > NORMALIZATION_TOLERANCE:
            raise ContractViolationError(f"weights marked normalized sum to {sum(values)!r}")
        object.__setattr__(self, 'w0', values[0])
        object.__setattr__(self, 'w1', values[1])
        object.__setattr__(self, 'w2', values[2])

    def __array__(self, dtype=None, copy=None):
        return np.array([self.w0, self.w1, self.w2], dtype=dtype or float)

    def __iter__(self):
        return iter((self.w0, self.w1, self.w2))

    @classmethod
    def from_array(cls, values, normalized: bool = False) -> 'WeightTriple':
        w0, w1, w2 = (float(v) for v in np.asarray(values, dtype=float).reshape(3))
        return cls(w0, w1, w2, normalized=normalized)


@dataclass(frozen=True)
class SmoothnessTriple:
    """Smoothness indicators β_0, β_1, β_2."""
    b0: float
    b1: float
    b2: float

    def __post_init__(self):
        values = (float(self.b0), float(self.b1), float(self.b2))
        if not all(np.isfinite(values)) or min(values) < 0.0:
            raise InvalidInputError(f"smoothness indicators must be finite and nonnegative, got {values}")

    def __array__(self, dtype=None, copy=None):
        return np.array([self.b0, self.b1, self.b2], dtype=dtype or float)

    def __iter__(self):
        return iter((self.b0, self.b1, self.b2))

    @classmethod
    def from_array(cls, values) -> 'SmoothnessTriple':
        b0, b1, b2 = (float(v) for v in np.asarray(values, dtype=float).reshape(3))
        return cls(b0, b1, b2)
