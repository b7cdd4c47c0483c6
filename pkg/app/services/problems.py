"""
Problem catalogue: initial data, exact solutions and cell averages.

Each test problem is a BaseProblem subclass. Point evaluations return
primitive variables for Euler problems ((ρ, u, p) or (ρ, u, v, p)) and the
scalar for advection problems; cell averages are of conserved variables.
"""

import math
from abc import ABC, abstractmethod
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from app.exceptions import DomainError
from app.models.grid import Grid1D, Grid2D
from app.models.problem import Equation, ProblemId, ProblemSpec, get_problem_spec
from app.services import euler

# 5-point Gauss-Legendre rule on [-1/2, 1/2]
_G5_NODES, _G5_WEIGHTS = np.polynomial.legendre.leggauss(5)
GAUSS5_NODES = 0.5 * _G5_NODES
GAUSS5_WEIGHTS = 0.5 * _G5_WEIGHTS

DOMAIN_TOLERANCE = 1e-12

Position = Union[float, np.ndarray, Tuple[np.ndarray, np.ndarray]]


class BaseProblem(ABC):
    """
    Abstract base class for the test problems.

    Subclasses implement `_initial` on coordinates already checked to lie
    in the domain. Problems with a closed-form solution set `speed` and
    transport the initial data periodically.
    """

    problem_id: ProblemId
    speed: Tuple[float, ...] = ()

    def __init__(self):
        self.spec: ProblemSpec = get_problem_spec(self.problem_id)
        self.gamma = self.spec.gamma

    @property
    def dimension(self) -> int:
        return self.spec.dimension

    @abstractmethod
    def _initial(self, *coords: np.ndarray) -> np.ndarray:
        """Initial point values, scalar or primitive stacked on axis 0."""

    def breakpoints(self) -> Sequence[float]:
        """Positions where the 1D initial data is discontinuous or has a kink."""
        return ()

    def _coords(self, position: Position) -> Tuple[np.ndarray, ...]:
        coords = (position,) if self.dimension == 1 else tuple(position)
        if len(coords) != self.dimension:
            raise DomainError(f"{self.problem_id.value} needs {self.dimension} coordinates")
        coords = tuple(np.asarray(c, dtype=float) for c in coords)
        for c, (lo, hi) in zip(coords, self.spec.bounds):
            if np.any(c < lo - DOMAIN_TOLERANCE) or np.any(c > hi + DOMAIN_TOLERANCE):
                raise DomainError(f"position outside the {self.problem_id.value} domain [{lo}, {hi}]")
        return coords

    def initial_state(self, position: Position):
        """
        Initial point value at `position`.

        Raises:
            DomainError: If the position is outside the domain
        """
        value = self._initial(*self._coords(position))
        return float(value) if np.ndim(value) == 0 else value

    def _wrap(self, coords: Tuple[np.ndarray, ...], time: float) -> Tuple[np.ndarray, ...]:
        wrapped = []
        for c, a, (lo, hi) in zip(coords, self.speed, self.spec.bounds):
            length = hi - lo
            wrapped.append(lo + np.mod(c - a * time - lo, length))
        return tuple(wrapped)

    def exact_solution(self, position: Position, time: float):
        """
        Closed-form solution at (position, time), or None for problems that
        are compared against a reference solution.
        """
        if not self.spec.has_exact:
            return None
        value = self._initial(*self._wrap(self._coords(position), time))
        return float(value) if np.ndim(value) == 0 else value

    def _conserved(self, *coords: np.ndarray, time: float = 0.0) -> np.ndarray:
        if time:
            coords = self._wrap(coords, time)
        values = self._initial(*coords)
        if self.spec.equation == Equation.ADVECTION:
            return values[None, ...]
        return euler.conservative(values, self.gamma)

    def cell_averages(self, grid: Union[Grid1D, Grid2D], time: float = 0.0) -> np.ndarray:
        """
        Cell averages of the conserved variables at `time`.

        1D averages integrate with 5-point Gauss rules between cell edges and
        the (transported) breakpoints; 2D averages use the tensor-product rule.

        Args:
            grid: Grid matching the problem dimension
            time: Evaluation time; must be 0 for problems without an exact solution

        Returns:
            Array of shape (m, N) or (m, nx, ny)
        """
        if time and not self.spec.has_exact:
            raise DomainError(f"{self.problem_id.value} has no exact solution at t = {time}")
        if self.dimension == 1:
            return self._averages_1d(grid, time)
        return self._averages_2d(grid, time)

    def _averages_1d(self, grid: Grid1D, time: float) -> np.ndarray:
        edges = grid.edges
        lo, hi = grid.x_left, grid.x_right
        breaks = np.asarray(self.breakpoints(), dtype=float)
        if breaks.size and time:
            breaks = lo + np.mod(breaks + self.speed[0] * time - lo, hi - lo)
        points = np.union1d(edges, breaks[(breaks > lo) & (breaks < hi)])

        left, right = points[:-1], points[1:]
        width = right - left
        middle = 0.5 * (left + right)
        cells = np.clip(np.searchsorted(edges, middle, side='right') - 1, 0, grid.n - 1)

        integral = None
        for node, weight in zip(GAUSS5_NODES, GAUSS5_WEIGHTS):
            x = np.clip(middle + node * width, lo, hi)
            term = weight * width * self._conserved(x, time=time)
            integral = term if integral is None else integral + term

        averages = np.stack([np.bincount(cells, weights=row, minlength=grid.n) for row in integral])
        return averages / grid.dx

    def _averages_2d(self, grid: Grid2D, time: float) -> np.ndarray:
        xc, yc = grid.mesh()
        total = None
        for ni, wi in zip(GAUSS5_NODES, GAUSS5_WEIGHTS):
            for nj, wj in zip(GAUSS5_NODES, GAUSS5_WEIGHTS):
                term = wi * wj * self._conserved(xc + ni * grid.dx, yc + nj * grid.dy, time=time)
                total = term if total is None else total + term
        return total


class Sine1D(BaseProblem):
    """u0 = sin(πx) on [-1, 1]."""
    problem_id = ProblemId.SINE_1D
    speed = (1.0,)

    def _initial(self, x):
        return np.sin(np.pi * x)


class HighOrderCriticalPoints(BaseProblem):
    """u0 = exp(−(x − 9)^5 cos^9(π(x − 9))) on (7.5, 10.5)."""
    problem_id = ProblemId.HIGH_ORDER_CP
    speed = (1.0,)

    def _initial(self, x):
        s = x - 9.0
        return np.exp(-s ** 5 * np.cos(np.pi * s) ** 9)


class ShuLinearProblem(BaseProblem):
    """Gaussian, square wave, sharp triangle and semi-ellipse."""
    problem_id = ProblemId.SLP
    speed = (1.0,)

    Z = -0.7
    DELTA = 0.005
    BETA = math.log(2.0) / (36.0 * DELTA ** 2)
    A = 0.5
    ALPHA = 10.0

    @staticmethod
    def _gaussian(x, beta, z):
        return np.exp(-beta * (x - z) ** 2)

    @staticmethod
    def _ellipse(x, alpha, a):
        return np.sqrt(np.maximum(1.0 - alpha ** 2 * (x - a) ** 2, 0.0))

    def breakpoints(self):
        a, d = self.A, self.DELTA
        return (-0.8, -0.6, -0.4, -0.2, 0.0, 0.1, 0.2, 0.4, a - d + 0.1, a + d - 0.1, 0.6)

    def _initial(self, x):
        z, d, beta, a, alpha = self.Z, self.DELTA, self.BETA, self.A, self.ALPHA
        gaussian = (self._gaussian(x, beta, z - d) + 4.0 * self._gaussian(x, beta, z)
                    + self._gaussian(x, beta, z + d)) / 6.0
        ellipse = (self._ellipse(x, alpha, a - d) + 4.0 * self._ellipse(x, alpha, a)
                   + self._ellipse(x, alpha, a + d)) / 6.0
        triangle = 1.0 - np.abs(10.0 * (x - 0.1))

        return np.select(
            [
                (x >= -0.8) & (x <= -0.6),
                (x >= -0.4) & (x <= -0.2),
                (x >= 0.0) & (x <= 0.2),
                (x >= 0.4) & (x <= 0.6),
            ],
            [gaussian, np.ones_like(x), triangle, ellipse],
            default=0.0
        )


class Step(BaseProblem):
    """1 on [-1, 0], 0 on (0, 1]."""
    problem_id = ProblemId.STEP
    speed = (1.0,)

    def breakpoints(self):
        return (-1.0, 0.0)

    def _initial(self, x):
        return np.where(x <= 0.0, 1.0, 0.0)


class ShuOsher(BaseProblem):
    problem_id = ProblemId.SHU_OSHER
    LEFT = (3.857143, 2.629369, 10.333333)
    SPLIT = -4.0

    def breakpoints(self):
        return (self.SPLIT,)

    def _initial(self, x):
        left = x < self.SPLIT
        return np.stack([
            np.where(left, self.LEFT[0], 1.0 + 0.2 * np.sin(5.0 * x)),
            np.where(left, self.LEFT[1], 0.0),
            np.where(left, self.LEFT[2], 1.0),
        ])


class TitarevToro(BaseProblem):
    problem_id = ProblemId.TITAREV_TORO
    LEFT = (1.515695, 0.5233346, 1.80500)
    SPLIT = -4.5

    def breakpoints(self):
        return (self.SPLIT,)

    def _initial(self, x):
        left = x < self.SPLIT
        return np.stack([
            np.where(left, self.LEFT[0], 1.0 + 0.1 * np.sin(20.0 * np.pi * x)),
            np.where(left, self.LEFT[1], 0.0),
            np.where(left, self.LEFT[2], 1.0),
        ])


class DensityWave(BaseProblem):
    """Density wave transported by (u, v) = (0.7, 0.3) at p = 1."""
    problem_id = ProblemId.DENSITY_WAVE_1
    speed = (0.7, 0.3)

    def _phase(self, s):
        return np.pi * s

    def _initial(self, x, y):
        rho = 1.0 + 0.2 * np.sin(self._phase(x + y))
        return np.stack([rho, np.full_like(rho, 0.7), np.full_like(rho, 0.3), np.ones_like(rho)])


class DensityWaveCriticalPoints(DensityWave):
    """Density wave whose phase has critical points."""
    problem_id = ProblemId.DENSITY_WAVE_2

    def _phase(self, s):
        return np.pi * s - np.sin(np.pi * s) / np.pi


class ShockVortex(BaseProblem):
    """
    Stationary shock at x = 0.5 with a vortex superimposed on the left state.

    The post-shock state follows the Rankine-Hugoniot expressions with
    p_R = 1.3; the velocity uses the additive form u_R = u_L + √2 (1 − p_R) / …
    """
    problem_id = ProblemId.SHOCK_VORTEX

    SHOCK_X = 0.5
    P_RIGHT = 1.3
    EPSILON = 0.3
    RC = 0.05
    ALPHA = 0.204
    CENTER = (0.25, 0.5)

    def right_state(self) -> Tuple[float, float, float, float]:
        g = self.gamma
        rho_l, u_l = 1.0, math.sqrt(g)
        p_r = self.P_RIGHT
        rho_r = rho_l * (g - 1.0 + (g + 1.0) * p_r) / (g + 1.0 + (g - 1.0) * p_r)
        u_r = u_l + math.sqrt(2.0) * (1.0 - p_r) / math.sqrt(g - 1.0 + p_r * (g + 1.0))
        return rho_r, u_r, 0.0, p_r

    def _initial(self, x, y):
        g = self.gamma
        rho_l, u_l, p_l = 1.0, math.sqrt(g), 1.0
        xc, yc = self.CENTER

        r2 = ((x - xc) ** 2 + (y - yc) ** 2) / self.RC ** 2
        bump = np.exp(self.ALPHA * (1.0 - r2))
        delta_t = -(g - 1.0) * self.EPSILON ** 2 * bump ** 2 / (4.0 * self.ALPHA * g)
        delta_rho = rho_l ** 2 / ((g - 1.0) * p_l) * delta_t
        delta_u = self.EPSILON * (y - yc) / self.RC * bump
        delta_v = -self.EPSILON * (x - xc) / self.RC * bump
        delta_p = g * p_l ** 2 / ((g - 1.0) * rho_l) * delta_t

        left = x < self.SHOCK_X
        rho_r, u_r, v_r, p_r = self.right_state()
        return np.stack([
            np.where(left, rho_l + delta_rho, rho_r),
            np.where(left, u_l + delta_u, u_r),
            np.where(left, delta_v, v_r),
            np.where(left, p_l + delta_p, p_r),
        ])


PROBLEMS: Dict[ProblemId, type] = {
    cls.problem_id: cls for cls in (
        Sine1D, HighOrderCriticalPoints, ShuLinearProblem, Step, ShuOsher,
        TitarevToro, DensityWave, DensityWaveCriticalPoints, ShockVortex
    )
}


def get_problem(problem_id) -> BaseProblem:
    """Instantiate the problem for an id or its string value."""
    return PROBLEMS[ProblemId(problem_id)]()


def initial_state(problem_id, position: Position):
    return get_problem(problem_id).initial_state(position)


def exact_solution(problem_id, position: Position, time: float) -> Optional[np.ndarray]:
    return get_problem(problem_id).exact_solution(position, time)
