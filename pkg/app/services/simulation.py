"""
Simulation driver: builds the grid, initial data and solver for a problem
and integrates to each requested output time.
"""

import time as clock
from typing import Optional, Sequence, Union

import numpy as np

from app.exceptions import DivergenceError
from app.models.cfl import CflRule
from app.models.grid import BoundaryKind, Grid1D, Grid2D
from app.models.problem import Equation, ProblemId
from app.models.report import RunResult, Snapshot
from app.models.scheme import Scheme
from app.services import euler
from app.services.problems import get_problem
from app.services.solver_1d import Solver1D
from app.services.solver_2d import Solver2D
from app.services.time_integrator import advance, dt_from_cfl
from app.services.trace import TraceSink
from app.utils.log import get_logger


class SimulationService:
    """
    Runs one (problem, scheme, grid size) combination.
    """

    def __init__(self, workers: int = 1, progress_every: int = 0):
        self.workers = workers
        self.progress_every = progress_every
        self.logger = get_logger(__name__)

    def make_grid(self, problem_id: ProblemId, n: int) -> Union[Grid1D, Grid2D]:
        problem = get_problem(problem_id)
        bounds = problem.spec.bounds
        if problem.dimension == 1:
            return Grid1D(bounds[0][0], bounds[0][1], n)
        return Grid2D(bounds[0], bounds[1], n, n)

    def make_solver(self, problem_id: ProblemId, scheme: Scheme, grid, boundary: BoundaryKind):
        problem = get_problem(problem_id)
        if problem.dimension == 1:
            speed = problem.speed[0] if problem.speed else 1.0
            return Solver1D(grid, problem.spec.equation, scheme, boundary,
                            gamma=problem.gamma, speed=speed, workers=self.workers)
        return Solver2D(grid, scheme, boundary, gamma=problem.gamma, workers=self.workers)

    def run(
        self,
        problem_id: ProblemId,
        scheme: Scheme,
        n: int,
        output_times: Sequence[float],
        cfl: Optional[CflRule] = None,
        boundary: Optional[BoundaryKind] = None,
        trace: Optional[TraceSink] = None
    ) -> RunResult:
        """
        Integrate from the cell-averaged initial data to every output time.

        Args:
            problem_id: Problem to solve
            scheme: Reconstruction scheme
            n: Cells per axis
            output_times: Ascending, nonnegative output times
            cfl: CFL rule; defaults to the problem's
            boundary: Boundary kind; defaults to the problem's
            trace: Sink for mapping traces at output times (1D only)

        Returns:
            RunResult with one snapshot per output time

        Raises:
            DivergenceError: If the solution blows up (logged at ERROR)
        """
        problem = get_problem(problem_id)
        cfl = cfl or problem.spec.cfl
        boundary = boundary or problem.spec.boundary
        grid = self.make_grid(problem_id, n)
        solver = self.make_solver(problem_id, scheme, grid, boundary)

        state = problem.cell_averages(grid)
        if problem.spec.equation == Equation.ADVECTION:
            state = state.reshape(1, n)

        if problem.dimension == 1:
            centers = (grid.centers,)
        else:
            centers = (grid.x_axis.centers, grid.y_axis.centers)

        def time_step(U: np.ndarray) -> float:
            if problem.dimension == 1:
                return dt_from_cfl(cfl, grid.spacing, [solver.max_wave_speed(U)])
            return dt_from_cfl(cfl, grid.spacing, solver.max_wave_speeds(U))

        result = RunResult(scheme.label, grid.shape, centers)
        label = f"{problem_id.value} {scheme.label} N={n}"
        self.logger.info(f"Starting {label} to t={max(output_times):g}")
        started = clock.perf_counter()

        t = 0.0
        steps = 0
        try:
            for t_out in sorted(output_times):
                state, taken = advance(state, t, t_out, solver.rhs, time_step, self._progress(label, steps))
                steps += taken
                t = t_out
                result.snapshots[t_out] = Snapshot(t_out, state.copy(), steps)
                if trace is not None and trace.enabled and problem.dimension == 1:
                    trace.record_diagnostics(t_out, solver.weight_diagnostics(state))
        except DivergenceError as e:
            self.logger.error(f"{label} diverged: {str(e)}")
            raise

        self.logger.info(f"Finished {label}: {steps} steps in {clock.perf_counter() - started:.2f}s")
        return result

    def _progress(self, label: str, offset: int):
        if not self.progress_every:
            return None

        def on_step(step: int, t: float, dt: float) -> None:
            if (offset + step) % self.progress_every == 0:
                self.logger.debug(f"{label}: step {offset + step}, t={t:.6g}, dt={dt:.3e}")

        return on_step


def primitive_fields(problem_id: ProblemId, conserved: np.ndarray) -> np.ndarray:
    """Primitive variables for output; scalars are returned unchanged."""
    problem = get_problem(problem_id)
    if problem.spec.equation == Equation.ADVECTION:
        return np.asarray(conserved).reshape((1,) + np.shape(conserved)[-1:])
    return euler.primitive(conserved, problem.gamma)
