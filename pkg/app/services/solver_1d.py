"""
Semi-discrete finite-volume operator for 1D advection and Euler.

Interface fluxes use global Lax-Friedrichs splitting. f⁺ is reconstructed
from the left with the window of cells j-2 … j+2, f⁻ from the right with
the mirrored window j+3 … j-1. Euler fluxes are reconstructed in the
characteristic variables of the Roe-averaged Jacobian at each interface.
"""

import numpy as np

from app.exceptions import InvalidInputError
from app.models.grid import GHOST_CELLS, BoundaryKind, Grid1D
from app.models.problem import Equation
from app.models.scheme import Scheme
from app.services import euler
from app.services.reconstruction import WeightDiagnostics, reconstruct_interface
from app.utils.parallel import map_chunks


def apply_boundary(field: np.ndarray, kind: BoundaryKind, ghost: int = GHOST_CELLS, axis: int = -1) -> np.ndarray:
    """
    Pad a field with ghost cells along one axis.

    Periodic wraps around; transmissive copies the nearest interior cell.

    Args:
        field: Interior values
        kind: Boundary kind
        ghost: Ghost cells per side
        axis: Axis to pad

    Returns:
        Padded copy
    """
    field = np.asarray(field, dtype=float)
    if field.shape[axis] < ghost:
        raise InvalidInputError(f"need at least {ghost} interior cells to fill {ghost} ghost cells")

    pad = [(0, 0)] * field.ndim
    pad[axis] = (ghost, ghost)
    mode = 'wrap' if BoundaryKind(kind) == BoundaryKind.PERIODIC else 'edge'
    return np.pad(field, pad, mode=mode)


def lf_split(f_values: np.ndarray, u_values: np.ndarray, alpha: float):
    """
    Global Lax-Friedrichs splitting f± = ½(f ± αu).

    Args:
        f_values: Physical flux
        u_values: Conserved values
        alpha: Global bound on the wave speed, positive

    Returns:
        (f_plus, f_minus)
    """
    if not alpha > 0:
        raise InvalidInputError(f"Lax-Friedrichs alpha must be positive, got {alpha}")
    f_values = np.asarray(f_values, dtype=float)
    u_values = np.asarray(u_values, dtype=float)
    return 0.5 * (f_values + alpha * u_values), 0.5 * (f_values - alpha * u_values)


def lf_flux(f_left, f_right, u_left, u_right, alpha: float):
    """½[f(a) + f(b) − α(b − a)]."""
    return 0.5 * (np.asarray(f_left) + np.asarray(f_right) - alpha * (np.asarray(u_right) - np.asarray(u_left)))


def _shifted(values: np.ndarray, start: int, stop: int, axis: int) -> np.ndarray:
    index = [slice(None)] * values.ndim
    index[axis] = slice(start, stop)
    return values[tuple(index)]


def left_windows(values: np.ndarray, faces: slice, axis: int = -1) -> np.ndarray:
    """Windows padded k … k+4 for interfaces k in `faces`, stacked on a new leading axis."""
    return np.stack([_shifted(values, faces.start + i, faces.stop + i, axis) for i in range(5)])


def right_windows(values: np.ndarray, faces: slice, axis: int = -1) -> np.ndarray:
    """Mirrored windows padded k+5 … k+1 for interfaces k in `faces`."""
    return np.stack([_shifted(values, faces.start + 5 - i, faces.stop + 5 - i, axis) for i in range(5)])


class Solver1D:
    """
    Right-hand side L(U) of dU/dt = L(U) on a uniform 1D grid.

    States are shaped (m, N): m = 1 for advection, 3 for Euler.
    """

    def __init__(
        self,
        grid: Grid1D,
        equation: Equation,
        scheme: Scheme,
        boundary: BoundaryKind,
        gamma: float = euler.GAMMA,
        speed: float = 1.0,
        workers: int = 1
    ):
        self.grid = grid
        self.equation = Equation(equation)
        self.scheme = scheme
        self.boundary = BoundaryKind(boundary)
        self.gamma = gamma
        self.speed = speed
        self.workers = workers

    def _as_system(self, field: np.ndarray) -> np.ndarray:
        field = np.asarray(field, dtype=float)
        if field.ndim == 1:
            field = field[None, :]
        expected = 1 if self.equation == Equation.ADVECTION else 3
        if field.shape != (expected, self.grid.n):
            raise InvalidInputError(f"expected a ({expected}, {self.grid.n}) state, got {field.shape}")
        return field

    def flux(self, U: np.ndarray) -> np.ndarray:
        if self.equation == Equation.ADVECTION:
            return self.speed * U
        return euler.flux_x(U, self.gamma)

    def max_wave_speed(self, field: np.ndarray) -> float:
        """|a| for advection, max(|u| + c) for Euler."""
        if self.equation == Equation.ADVECTION:
            return abs(self.speed)
        return euler.max_wave_speed(self._as_system(field), self.gamma)

    def interface_fluxes(self, field: np.ndarray, diagnostics: bool = False):
        """
        Numerical fluxes at the N + 1 interfaces.

        Args:
            field: State, shape (m, N) or (N,) for advection
            diagnostics: Also return the weights of the f⁺ reconstruction

        Returns:
            Fluxes of shape (m, N + 1); with diagnostics, also a
            WeightDiagnostics whose arrays are shaped (3, m, N + 1)
        """
        U = self._as_system(field)
        if self.equation == Equation.EULER:
            euler.require_admissible(U, self.gamma)

        padded = apply_boundary(U, self.boundary)
        alpha = self.max_wave_speed(U)
        f_plus, f_minus = lf_split(self.flux(padded), padded, alpha)

        if diagnostics:
            return self._face_block(padded, f_plus, f_minus, slice(0, self.grid.n + 1), True)

        return map_chunks(
            lambda faces: self._face_block(padded, f_plus, f_minus, faces),
            self.grid.n + 1,
            self.workers
        )

    def _face_block(self, padded, f_plus, f_minus, faces: slice, diagnostics: bool = False):
        wp = left_windows(f_plus, faces)
        wm = right_windows(f_minus, faces)

        if self.equation == Equation.EULER:
            L, R, _ = euler.char_basis(
                padded[:, faces.start + 2:faces.stop + 2],
                padded[:, faces.start + 3:faces.stop + 3],
                self.gamma
            )
            wp = euler.project(L, wp)
            wm = euler.project(L, wm)

        if diagnostics:
            plus, weights = reconstruct_interface(wp, self.scheme, diagnostics=True)
        else:
            plus, weights = reconstruct_interface(wp, self.scheme), None
        flux = plus + reconstruct_interface(wm, self.scheme)

        if self.equation == Equation.EULER:
            flux = euler.project(R, flux)

        if diagnostics:
            return flux, weights
        return flux

    def rhs(self, field: np.ndarray) -> np.ndarray:
        """−(F_{j+1/2} − F_{j−1/2}) / Δx, same shape as field."""
        fluxes = self.interface_fluxes(field)
        tendency = -(fluxes[:, 1:] - fluxes[:, :-1]) / self.grid.dx
        return tendency.reshape(np.shape(field))

    def weight_diagnostics(self, field: np.ndarray) -> WeightDiagnostics:
        """Weights of the f⁺ reconstructions at the interfaces x_{j+1/2}, j = 0 … N-1."""
        _, weights = self.interface_fluxes(field, diagnostics=True)
        return WeightDiagnostics(
            weights.omega_js[..., 1:],
            weights.omega[..., 1:],
            weights.is_op[..., 1:]
        )


def rhs_1d(
    field: np.ndarray,
    equation: Equation,
    scheme: Scheme,
    grid: Grid1D,
    boundary: BoundaryKind,
    gamma: float = euler.GAMMA,
    speed: float = 1.0,
    workers: int = 1
) -> np.ndarray:
    """Semi-discrete tendency of a 1D state; see Solver1D."""
    return Solver1D(grid, equation, scheme, boundary, gamma, speed, workers).rhs(field)


def max_wave_speed(field: np.ndarray, equation: Equation, gamma: float = euler.GAMMA,
                   speed: float = 1.0) -> float:
    """|a| for advection, max(|u| + c) over cells for Euler."""
    if Equation(equation) == Equation.ADVECTION:
        return abs(speed)
    return euler.max_wave_speed(np.asarray(field, dtype=float), gamma)
