"""
Uniform Cartesian grids and boundary kinds.
"""

import enum
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from app.exceptions import InvalidInputError

# Ghost cells per side needed by the two split five-cell stencils
GHOST_CELLS = 3


class BoundaryKind(enum.Enum):
    PERIODIC = "periodic"
    TRANSMISSIVE = "transmissive"


def _check_bounds(lo: float, hi: float, n: int, axis: str) -> None:
    if not hi > lo:
        raise InvalidInputError(f"{axis} bounds must satisfy lo < hi, got ({lo}, {hi})")
    if n < 6:
        raise InvalidInputError(f"{axis} needs at least 6 cells, got {n}")


@dataclass(frozen=True)
class Grid1D:
    """
    N uniform cells on [x_left, x_right].

    Attributes:
        x_left, x_right: Domain bounds
        n: Number of cells
    """
    x_left: float
    x_right: float
    n: int

    def __post_init__(self):
        _check_bounds(self.x_left, self.x_right, self.n, 'x')

    @property
    def dx(self) -> float:
        return (self.x_right - self.x_left) / self.n

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.x_left, self.x_right, self.n + 1)

    @property
    def centers(self) -> np.ndarray:
        return self.x_left + (np.arange(self.n) + 0.5) * self.dx

    @property
    def spacing(self) -> Tuple[float]:
        return (self.dx,)

    @property
    def shape(self) -> Tuple[int]:
        return (self.n,)


@dataclass(frozen=True)
class Grid2D:
    """
    nx × ny uniform cells on [x_lo, x_hi] × [y_lo, y_hi].

    Arrays on this grid are indexed [..., i, j] with i along x.
    """
    x_bounds: Tuple[float, float]
    y_bounds: Tuple[float, float]
    nx: int
    ny: int

    def __post_init__(self):
        _check_bounds(*self.x_bounds, self.nx, 'x')
        _check_bounds(*self.y_bounds, self.ny, 'y')

    @property
    def x_axis(self) -> Grid1D:
        return Grid1D(self.x_bounds[0], self.x_bounds[1], self.nx)

    @property
    def y_axis(self) -> Grid1D:
        return Grid1D(self.y_bounds[0], self.y_bounds[1], self.ny)

    @property
    def dx(self) -> float:
        return self.x_axis.dx

    @property
    def dy(self) -> float:
        return self.y_axis.dx

    @property
    def spacing(self) -> Tuple[float, float]:
        return (self.dx, self.dy)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nx, self.ny)

    def mesh(self) -> Tuple[np.ndarray, np.ndarray]:
        """Cell-center coordinates, each shaped (nx, ny)."""
        return np.meshgrid(self.x_axis.centers, self.y_axis.centers, indexing='ij')
