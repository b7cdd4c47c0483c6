import numpy as np
import pytest

from app.exceptions import DivergenceError, InvalidInputError
from app.models.cfl import CflRule
from app.models.grid import BoundaryKind, Grid2D
from app.models.scheme import Scheme
from app.services import euler
from app.services.problems import get_problem
from app.services.solver_2d import GAUSS_NODES, GAUSS_WEIGHTS, Solver2D, face_gauss_states, rhs_2d, swap_axes
from app.services.time_integrator import advance, dt_from_cfl


def uniform_state(grid, rho=1.0, u=0.7, v=-0.3, p=1.0):
    W = np.stack([np.full(grid.shape, value) for value in (rho, u, v, p)])
    return euler.conservative(W)


def smooth_state(grid):
    x, y = grid.mesh()
    W = np.stack([
        1.0 + 0.2 * np.sin(np.pi * x) * np.cos(np.pi * y),
        0.5 + 0.1 * np.cos(np.pi * y),
        0.2 * np.sin(np.pi * x),
        1.0 + 0.1 * np.sin(np.pi * (x + y)),
    ])
    return euler.conservative(W)


class TestFreeStream:
    """Uniform flow stays uniform."""

    def test_zero_tendency(self, square_grid, lop_m_scheme, periodic):
        """L(const) = 0."""
        tendency = rhs_2d(uniform_state(square_grid), lop_m_scheme, square_grid, periodic)
        np.testing.assert_allclose(tendency, 0.0, atol=1e-12)

    def test_preserved_over_many_steps(self, square_grid, periodic):
        """100 steps keep the state uniform to round-off."""
        solver = Solver2D(square_grid, Scheme.from_name('lop-pm6'), periodic)
        U0 = uniform_state(square_grid)
        U = U0.copy()
        dt = dt_from_cfl(CflRule.constant(0.5), square_grid.spacing, solver.max_wave_speeds(U0))
        for _ in range(100):
            U, _ = advance(U, 0.0, dt, solver.rhs, lambda _: dt)
        np.testing.assert_allclose(U, U0, rtol=0, atol=1e-11)


class TestSymmetry:
    """Axis symmetry and conservation."""

    def test_swap_axes_commutes_with_rhs(self, square_grid, js_scheme, periodic):
        """Transposing the grid and exchanging momenta commutes with L."""
        U = smooth_state(square_grid)
        direct = swap_axes(rhs_2d(U, js_scheme, square_grid, periodic))
        swapped = rhs_2d(swap_axes(U), js_scheme, square_grid, periodic)
        np.testing.assert_allclose(swapped, direct, rtol=1e-12, atol=1e-12)

    def test_swap_axes_is_involution(self, square_grid):
        """Swapping twice is the identity."""
        U = smooth_state(square_grid)
        np.testing.assert_array_equal(swap_axes(swap_axes(U)), U)

    def test_periodic_conservation(self, square_grid, lop_m_scheme, periodic):
        """Cell sums are conserved with periodic boundaries."""
        U = smooth_state(square_grid)
        tendency = rhs_2d(U, lop_m_scheme, square_grid, periodic)
        np.testing.assert_allclose(tendency.sum(axis=(1, 2)), 0.0, atol=1e-10)

    def test_workers_do_not_change_result(self, square_grid, lop_m_scheme, periodic):
        """Threaded evaluation matches serial evaluation."""
        U = smooth_state(square_grid)
        serial = rhs_2d(U, lop_m_scheme, square_grid, periodic)
        threaded = rhs_2d(U, lop_m_scheme, square_grid, periodic, workers=3)
        np.testing.assert_allclose(serial, threaded, rtol=1e-14, atol=1e-13)


class TestFaceStates:
    """Gauss-node states on faces."""

    def test_uniform_states(self, square_grid, js_scheme, periodic):
        """Constant data gives the constant state at every node of both face families."""
        U = uniform_state(square_grid)
        for axis, shape in ((0, (3, 4, 11, 10)), (1, (3, 4, 10, 11))):
            left, right = face_gauss_states(U, axis, js_scheme, square_grid, periodic)
            assert left.shape == shape
            assert right.shape == shape
            expected = np.broadcast_to(U[:, :1, :1], shape[1:])
            for g in range(3):
                np.testing.assert_allclose(left[g], expected, rtol=1e-13)
                np.testing.assert_allclose(right[g], expected, rtol=1e-13)

    def test_linear_density_node_values(self, js_scheme):
        """A density linear in y is recovered at the Gauss nodes of x-faces."""
        grid = Grid2D((0.0, 1.0), (0.0, 1.0), 12, 12)
        x, y = grid.mesh()
        W = np.stack([1.0 + 0.1 * y, np.zeros_like(x), np.zeros_like(x), np.ones_like(x)])
        left, _ = face_gauss_states(euler.conservative(W), 0, js_scheme, grid, BoundaryKind.TRANSMISSIVE)
        yc = grid.y_axis.centers
        nodes = np.array([-np.sqrt(15.0) / 10.0, 0.0, np.sqrt(15.0) / 10.0])
        for g, xi in enumerate(nodes):
            expected = 1.0 + 0.1 * (yc[3:-3] + xi * grid.dy)
            np.testing.assert_allclose(left[g, 0, 5, 3:-3], expected, rtol=1e-12)

    def test_gauss_weights_sum_to_one(self):
        """The face rule integrates constants exactly."""
        assert GAUSS_WEIGHTS.sum() == pytest.approx(1.0)

    def test_gauss_rule_exact_to_degree_five(self):
        """Σ w ξ^k equals the mean of ξ^k over [−1/2, 1/2] for k ≤ 5, not for k = 6."""
        for k in range(6):
            exact = 0.0 if k % 2 else 0.5 ** k / (k + 1)
            assert np.dot(GAUSS_WEIGHTS, GAUSS_NODES ** k) == pytest.approx(exact, abs=1e-15), k
        assert abs(np.dot(GAUSS_WEIGHTS, GAUSS_NODES ** 6) - 0.5 ** 6 / 7) > 1e-5

    def test_biquartic_node_values(self):
        """With linear weights, node states of a bi-quartic density are exact."""
        grid = Grid2D((0.0, 1.0), (0.0, 1.0), 12, 12)
        p = [1.0, 0.3, -0.2, 0.1, 0.05]
        q = [1.0, -0.1, 0.2, 0.15, -0.05]
        quartic = [0.0, 0.0, 0.0, 0.0, 1.0]

        def polynomial(coefficients, x):
            return sum(c * x ** k for k, c in enumerate(coefficients))

        def cell_means(coefficients, edges):
            a, b = edges[:-1], edges[1:]
            return sum(c * (b ** (k + 1) - a ** (k + 1)) / ((k + 1) * (b - a)) for k, c in enumerate(coefficients))

        x_edges, y_edges = grid.x_axis.edges, grid.y_axis.edges
        rho = (np.outer(cell_means(p, x_edges), cell_means(q, y_edges))
               + 0.1 * np.outer(cell_means(quartic, x_edges), cell_means(quartic, y_edges)))
        W = np.stack([rho, np.zeros_like(rho), np.zeros_like(rho), np.ones_like(rho)])
        scheme = Scheme.from_name('ilw')
        left, right = face_gauss_states(euler.conservative(W), 0, scheme, grid, BoundaryKind.TRANSMISSIVE)

        faces = np.arange(3, grid.nx - 2)
        segments = np.arange(2, grid.ny - 2)
        xf = x_edges[faces][:, None]
        for g, xi in enumerate(GAUSS_NODES):
            y = grid.y_axis.centers[segments][None, :] + xi * grid.dy
            expected = polynomial(p, xf) * polynomial(q, y) + 0.1 * xf ** 4 * y ** 4
            np.testing.assert_allclose(left[g, 0][np.ix_(faces, segments)], expected, rtol=1e-10)
            np.testing.assert_allclose(right[g, 0][np.ix_(faces, segments)], expected, rtol=1e-10)

    def test_invalid_axis(self, square_grid, js_scheme, periodic):
        """Only axes 0 and 1 have faces."""
        with pytest.raises(InvalidInputError):
            face_gauss_states(uniform_state(square_grid), 2, js_scheme, square_grid, periodic)


class TestDensityWave:
    """Smooth 2D transport."""

    def test_short_time_accuracy(self, lop_m_scheme):
        """The density wave moves with (0.7, 0.3)."""
        problem = get_problem('density-wave-1')
        grid = Grid2D((-1.0, 1.0), (-1.0, 1.0), 20, 20)
        solver = Solver2D(grid, lop_m_scheme, BoundaryKind.PERIODIC)

        def time_step(U):
            return dt_from_cfl(CflRule.constant(0.5), grid.spacing, solver.max_wave_speeds(U))

        U, _ = advance(problem.cell_averages(grid), 0.0, 0.05, solver.rhs, time_step)
        expected = problem.cell_averages(grid, 0.05)
        np.testing.assert_allclose(U[0], expected[0], atol=1e-3)

    def test_inadmissible_state(self, square_grid, js_scheme, periodic):
        """Negative pressure raises DivergenceError."""
        U = uniform_state(square_grid)
        U[3, 4, 5] = 0.0
        with pytest.raises(DivergenceError):
            rhs_2d(U, js_scheme, square_grid, periodic)

    def test_wrong_shape(self, square_grid, js_scheme, periodic):
        """The state must be (4, nx, ny)."""
        with pytest.raises(InvalidInputError):
            rhs_2d(np.ones((3, 10, 10)), js_scheme, square_grid, periodic)
