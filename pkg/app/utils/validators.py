"""
Input checks shared by the numerical kernels.
"""

from typing import Sequence

import numpy as np

from app.exceptions import InvalidInputError


def require_finite(values: np.ndarray, what: str = "input") -> np.ndarray:
    """
    Raise InvalidInputError if any entry is NaN or infinite.

    Returns:
        The input as a float ndarray
    """
    arr = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{what} contains non-finite values")
    return arr


def require_leading(values: np.ndarray, size: int, what: str = "input") -> np.ndarray:
    """Check that the leading axis has exactly `size` entries."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim == 0 or arr.shape[0] != size:
        raise InvalidInputError(
            f"{what} must have {size} entries along the first axis, got shape {arr.shape}"
        )
    return arr


def require_same_shape(a: np.ndarray, b: np.ndarray, what: str = "fields") -> None:
    if np.shape(a) != np.shape(b):
        raise InvalidInputError(f"{what} differ in shape: {np.shape(a)} vs {np.shape(b)}")


def require_index(index: int, valid: Sequence[int], what: str = "index") -> int:
    if index not in valid:
        raise InvalidInputError(f"{what} {index!r} not in {list(valid)}")
    return int(index)
