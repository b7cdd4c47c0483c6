"""
2D Euler finite-volume operator ("class A").

Fluxes through a face are integrated with the 3-point Gauss-Legendre rule.
The point states at the Gauss nodes come from two nested 1D WENO passes:
face averages normal to the face from cell averages, then point values
along the face from the face averages. Both passes work on characteristic
variables of the face-normal Jacobian.

Arrays are shaped (4, nx, ny) with variables (ρ, ρu, ρv, E). The y sweep
reuses the x sweep on the transposed state with swapped momenta.
"""

from typing import Optional, Tuple

import numpy as np

from app.exceptions import DivergenceError, InvalidInputError
from app.models.grid import BoundaryKind, Grid2D
from app.models.scheme import Scheme
from app.services import euler
from app.services.reconstruction import reconstruct_interface, reconstruct_point
from app.services.solver_1d import apply_boundary, lf_flux, left_windows, right_windows
from app.services.weno_core import point_stencil
from app.utils.parallel import map_chunks

GAUSS_NODES = np.array([-np.sqrt(15.0) / 10.0, 0.0, np.sqrt(15.0) / 10.0])
GAUSS_WEIGHTS = np.array([5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0])


def swap_axes(U: np.ndarray) -> np.ndarray:
    """Transpose the grid axes and exchange ρu and ρv."""
    return np.ascontiguousarray(np.swapaxes(U, 1, 2)[[0, 2, 1, 3]])


class Solver2D:
    """Right-hand side L(U) of the 2D Euler equations on a uniform grid."""

    def __init__(
        self,
        grid: Grid2D,
        scheme: Scheme,
        boundary: BoundaryKind,
        gamma: float = euler.GAMMA,
        workers: int = 1
    ):
        self.grid = grid
        self.scheme = scheme
        self.boundary = BoundaryKind(boundary)
        self.gamma = gamma
        self.workers = workers
        self._stencils = [point_stencil(float(xi)) for xi in GAUSS_NODES]

    def _check(self, U: np.ndarray) -> np.ndarray:
        U = np.asarray(U, dtype=float)
        if U.shape != (4,) + self.grid.shape:
            raise InvalidInputError(f"expected a (4, {self.grid.nx}, {self.grid.ny}) state, got {U.shape}")
        return U

    def max_wave_speeds(self, U: np.ndarray) -> Tuple[float, float]:
        U = self._check(U)
        return (
            euler.max_wave_speed(U, self.gamma, axis=0),
            euler.max_wave_speed(U, self.gamma, axis=1),
        )

    # ------------------------------------------------------------------
    # x-normal sweep on an (4, nx, ny) state
    # ------------------------------------------------------------------
    def _face_averages(self, padded_x: np.ndarray, faces: slice):
        """Pass 1: left/right face averages at x-faces `faces`, shape (4, F, ny)."""
        L, R, _ = euler.char_basis(
            padded_x[:, faces.start + 2:faces.stop + 2],
            padded_x[:, faces.start + 3:faces.stop + 3],
            self.gamma
        )
        left = reconstruct_interface(euler.project(L, left_windows(padded_x, faces, axis=1)), self.scheme)
        right = reconstruct_interface(euler.project(L, right_windows(padded_x, faces, axis=1)), self.scheme)
        return euler.project(R, left), euler.project(R, right)

    def _node_states(self, left: np.ndarray, right: np.ndarray, ny: int):
        """
        Pass 2: point states at the Gauss nodes of every face segment.

        Returns:
            (left_nodes, right_nodes), each shaped (3, 4, F, ny)
        """
        L, R, _ = euler.char_basis(left, right, self.gamma)

        nodes = []
        for face_average in (left, right):
            padded = apply_boundary(face_average, self.boundary, axis=2)
            # window centered on segment j is padded j+1 … j+5
            windows = euler.project(L, left_windows(padded, slice(1, ny + 1)))
            nodes.append(np.stack([
                euler.project(R, reconstruct_point(windows, self.scheme, stencil.xi, stencil))
                for stencil in self._stencils
            ]))
        return nodes[0], nodes[1]

    def face_states(self, U: np.ndarray, faces: Optional[slice] = None):
        """
        Left/right states at the Gauss nodes of the x-faces.

        Args:
            U: State, shape (4, nx, ny)
            faces: Subset of the nx + 1 faces

        Returns:
            (left, right), each shaped (3, 4, F, ny)
        """
        nx, ny = U.shape[1:]
        faces = faces or slice(0, nx + 1)
        padded_x = apply_boundary(U, self.boundary, axis=1)
        left, right = self._face_averages(padded_x, faces)
        left_nodes, right_nodes = self._node_states(left, right, ny)

        for nodes in (left_nodes, right_nodes):
            for g in range(len(self._stencils)):
                cell = euler.first_inadmissible(nodes[g], self.gamma)
                if cell is not None:
                    raise DivergenceError("inadmissible reconstructed face state", cell=faces.start * ny + cell)
        return left_nodes, right_nodes

    def _x_fluxes(self, U: np.ndarray, alpha: float) -> np.ndarray:
        """Gauss-averaged numerical fluxes through all x-faces, shape (4, nx + 1, ny)."""
        def block(faces: slice) -> np.ndarray:
            left, right = self.face_states(U, faces)
            flux = np.zeros(left.shape[1:])
            for g, weight in enumerate(GAUSS_WEIGHTS):
                flux += weight * lf_flux(
                    euler.flux_x(left[g], self.gamma),
                    euler.flux_x(right[g], self.gamma),
                    left[g], right[g], alpha
                )
            return flux

        return map_chunks(block, U.shape[1] + 1, self.workers, axis=1)

    def rhs(self, field: np.ndarray) -> np.ndarray:
        """
        −(F_{i+1/2,j} − F_{i−1/2,j})/Δx − (G_{i,j+1/2} − G_{i,j−1/2})/Δy.
        """
        U = self._check(field)
        euler.require_admissible(U, self.gamma)
        alpha_x, alpha_y = self.max_wave_speeds(U)

        fx = self._x_fluxes(U, alpha_x)
        gy = swap_axes(self._x_fluxes(swap_axes(U), alpha_y))

        return (-(fx[:, 1:, :] - fx[:, :-1, :]) / self.grid.dx
                - (gy[:, :, 1:] - gy[:, :, :-1]) / self.grid.dy)


def face_gauss_states(field: np.ndarray, axis: int, scheme: Scheme, grid: Grid2D, boundary: BoundaryKind,
                      gamma: float = euler.GAMMA):
    """
    Left/right states at the 3 Gauss nodes of every face normal to `axis`.

    Returns:
        (left, right), each shaped (3, 4, nx + 1, ny) for axis 0 and
        (3, 4, nx, ny + 1) for axis 1, variables in the original frame
    """
    solver = Solver2D(grid, scheme, boundary, gamma)
    U = solver._check(field)
    if axis == 0:
        return solver.face_states(U)
    if axis != 1:
        raise InvalidInputError(f"axis must be 0 or 1, got {axis}")

    left, right = solver.face_states(swap_axes(U))
    return (
        np.stack([swap_axes(nodes) for nodes in left]),
        np.stack([swap_axes(nodes) for nodes in right]),
    )


def rhs_2d(field: np.ndarray, scheme: Scheme, grid: Grid2D, boundary: BoundaryKind,
           gamma: float = euler.GAMMA, workers: int = 1) -> np.ndarray:
    """Semi-discrete tendency of a 2D Euler state; see Solver2D."""
    return Solver2D(grid, scheme, boundary, gamma, workers).rhs(field)
