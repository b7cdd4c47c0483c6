import numpy as np
import pytest

from app.analytics.metrics import convergence_order, error_norms
from app.exceptions import DivergenceError, InvalidInputError
from app.models.cfl import CflRule
from app.models.grid import BoundaryKind, Grid1D
from app.models.problem import Equation
from app.models.scheme import Scheme
from app.services import euler
from app.services.problems import get_problem
from app.services.solver_1d import Solver1D, apply_boundary, lf_split, rhs_1d
from app.services.time_integrator import advance, dt_from_cfl


def integrate(solver, state, t_end, cfl=CflRule.constant(0.4)):
    """Run the solver with its own CFL time step."""
    def time_step(U):
        return dt_from_cfl(cfl, solver.grid.spacing, [solver.max_wave_speed(U)])
    return advance(state, 0.0, t_end, solver.rhs, time_step)[0]


def sine_error(scheme_name, n):
    problem = get_problem('sine')
    grid = Grid1D(-1.0, 1.0, n)
    solver = Solver1D(grid, Equation.ADVECTION, Scheme.from_name(scheme_name), BoundaryKind.PERIODIC)
    state = integrate(solver, problem.cell_averages(grid), 0.5, CflRule.mesh_power())
    return error_norms(state[0], problem.cell_averages(grid, 0.5)[0], grid.dx)[0]


class TestBoundaries:
    """Ghost-cell filling."""

    def test_periodic(self):
        """Periodic padding wraps around."""
        padded = apply_boundary(np.arange(6.0), BoundaryKind.PERIODIC)
        np.testing.assert_array_equal(padded[:3], [3.0, 4.0, 5.0])
        np.testing.assert_array_equal(padded[-3:], [0.0, 1.0, 2.0])

    def test_transmissive(self):
        """Transmissive padding copies the edge cells."""
        padded = apply_boundary(np.arange(6.0), BoundaryKind.TRANSMISSIVE)
        np.testing.assert_array_equal(padded[:3], [0.0, 0.0, 0.0])
        np.testing.assert_array_equal(padded[-3:], [5.0, 5.0, 5.0])

    def test_too_few_cells(self):
        """Three ghost cells need three interior cells."""
        with pytest.raises(InvalidInputError):
            apply_boundary(np.arange(2.0), BoundaryKind.PERIODIC)


class TestLaxFriedrichs:
    """Global flux splitting."""

    def test_split_sums_to_flux(self):
        """f⁺ + f⁻ = f."""
        f = np.array([1.0, -2.0, 0.5])
        u = np.array([0.3, 0.1, -0.4])
        plus, minus = lf_split(f, u, 2.0)
        np.testing.assert_allclose(plus + minus, f)
        np.testing.assert_allclose(plus - minus, 2.0 * u)

    def test_alpha_positive(self):
        """α must be positive."""
        with pytest.raises(InvalidInputError):
            lf_split([1.0], [1.0], 0.0)


class TestAdvection:
    """Linear advection operator."""

    def test_constant_state_is_steady(self, periodic_grid, lop_m_scheme):
        """L(const) = 0."""
        tendency = rhs_1d(np.full(40, 2.5), Equation.ADVECTION, lop_m_scheme, periodic_grid, BoundaryKind.PERIODIC)
        np.testing.assert_allclose(tendency, 0.0, atol=1e-12)

    @pytest.mark.parametrize('name', ['js', 'lop-m', 'acm', 'ilw'])
    def test_periodic_conservation(self, periodic_grid, name):
        """Σ u_j Δx is preserved over 100 steps."""
        solver = Solver1D(periodic_grid, Equation.ADVECTION, Scheme.from_name(name), BoundaryKind.PERIODIC)
        state = (1.0 + 0.5 * np.sin(np.pi * periodic_grid.centers))[None, :]
        total = state.sum() * periodic_grid.dx
        dt = 0.4 * periodic_grid.dx
        for _ in range(100):
            state, _ = advance(state, 0.0, dt, solver.rhs, lambda U: dt)
        assert state.sum() * periodic_grid.dx == pytest.approx(total, abs=1e-12)

    @pytest.mark.parametrize('name', ['ilw', 'lop-m', 'pm6'])
    def test_fifth_order_on_sine(self, name):
        """Smooth advection converges at better than fourth order."""
        order = convergence_order(sine_error(name, 40), sine_error(name, 80), 40, 80)
        assert order > 4.3

    @pytest.mark.parametrize('name', ['m', 'pm6', 'im', 'ppm5', 'rm260', 'acm'])
    def test_lop_matches_mapped_scheme_on_smooth_data(self, name):
        """On a resolved sine wave every stencil is OP, so LOP-X equals X."""
        grid = Grid1D(-1.0, 1.0, 80)
        u = get_problem('sine').cell_averages(grid)
        adapted_scheme = Scheme.from_name('lop-' + name)
        plain = rhs_1d(u, Equation.ADVECTION, Scheme.from_name(name), grid, BoundaryKind.PERIODIC)
        adapted = rhs_1d(u, Equation.ADVECTION, adapted_scheme, grid, BoundaryKind.PERIODIC)
        np.testing.assert_allclose(adapted, plain, rtol=0, atol=1e-12)

        solver = Solver1D(grid, Equation.ADVECTION, adapted_scheme, BoundaryKind.PERIODIC)
        assert solver.weight_diagnostics(u).is_op.all()

    def test_mirror_symmetry(self, periodic_grid, js_scheme):
        """Reversing the data and the speed reverses the tendency."""
        u = np.exp(-10.0 * periodic_grid.centers ** 2) + 0.1 * periodic_grid.centers
        forward = Solver1D(periodic_grid, Equation.ADVECTION, js_scheme, BoundaryKind.PERIODIC, speed=1.0)
        backward = Solver1D(periodic_grid, Equation.ADVECTION, js_scheme, BoundaryKind.PERIODIC, speed=-1.0)
        np.testing.assert_allclose(backward.rhs(u[::-1].copy()), forward.rhs(u)[::-1], rtol=1e-13, atol=1e-12)

    def test_diagnostics_shape(self, periodic_grid, lop_m_scheme):
        """One weight triple per interface."""
        solver = Solver1D(periodic_grid, Equation.ADVECTION, lop_m_scheme, BoundaryKind.PERIODIC)
        diagnostics = solver.weight_diagnostics(np.sin(np.pi * periodic_grid.centers))
        assert diagnostics.omega.shape == (3, 1, 40)
        assert diagnostics.is_op.shape == (1, 40)
        np.testing.assert_allclose(diagnostics.omega.sum(axis=0), 1.0)

    def test_workers_do_not_change_result(self, periodic_grid, lop_m_scheme):
        """Chunked evaluation is bitwise identical to serial evaluation."""
        u = np.sin(np.pi * periodic_grid.centers) ** 3
        serial = Solver1D(periodic_grid, Equation.ADVECTION, lop_m_scheme, BoundaryKind.PERIODIC).rhs(u)
        threaded = Solver1D(periodic_grid, Equation.ADVECTION, lop_m_scheme, BoundaryKind.PERIODIC,
                            workers=4).rhs(u)
        np.testing.assert_array_equal(serial, threaded)

    def test_wrong_shape_rejected(self, periodic_grid, js_scheme):
        """The state must match the grid."""
        solver = Solver1D(periodic_grid, Equation.ADVECTION, js_scheme, BoundaryKind.PERIODIC)
        with pytest.raises(InvalidInputError):
            solver.rhs(np.zeros(41))


class TestEuler1D:
    """Characteristic-wise Euler operator."""

    def test_uniform_flow_is_steady(self, periodic_grid, lop_m_scheme):
        """A constant state has zero tendency."""
        U = np.repeat(euler.conservative(np.array([[1.0], [0.3], [2.0]])), 40, axis=1)
        tendency = Solver1D(periodic_grid, Equation.EULER, lop_m_scheme, BoundaryKind.PERIODIC).rhs(U)
        np.testing.assert_allclose(tendency, 0.0, atol=1e-12)

    def test_periodic_conservation(self, periodic_grid, lop_m_scheme):
        """Mass, momentum and energy are conserved with periodic boundaries."""
        x = periodic_grid.centers
        W = np.stack([1.0 + 0.2 * np.sin(np.pi * x), np.full_like(x, 0.5), np.ones_like(x)])
        U = euler.conservative(W)
        solver = Solver1D(periodic_grid, Equation.EULER, lop_m_scheme, BoundaryKind.PERIODIC)
        totals = U.sum(axis=1)
        for _ in range(100):
            dt = dt_from_cfl(CflRule.constant(0.4), periodic_grid.spacing, [solver.max_wave_speed(U)])
            U, _ = advance(U, 0.0, dt, solver.rhs, lambda _: dt)
        np.testing.assert_allclose(U.sum(axis=1), totals, rtol=0, atol=1e-11)

    def test_density_wave_is_transported(self, lop_m_scheme):
        """At constant u and p the density is advected."""
        grid = Grid1D(-1.0, 1.0, 80)
        x = grid.centers
        W = np.stack([1.0 + 0.2 * np.sin(np.pi * x), np.ones_like(x), np.ones_like(x)])
        solver = Solver1D(grid, Equation.EULER, lop_m_scheme, BoundaryKind.PERIODIC)
        U = integrate(solver, euler.conservative(W), 0.1)
        expected = 1.0 + 0.2 * np.sin(np.pi * (x - 0.1))
        np.testing.assert_allclose(U[0], expected, atol=1e-4)

    def test_inadmissible_state_diverges(self, periodic_grid, js_scheme):
        """Negative density raises DivergenceError."""
        U = np.repeat(euler.conservative(np.array([[1.0], [0.0], [1.0]])), 40, axis=1)
        U[0, 7] = -1.0
        solver = Solver1D(periodic_grid, Equation.EULER, js_scheme, BoundaryKind.PERIODIC)
        with pytest.raises(DivergenceError) as excinfo:
            solver.rhs(U)
        assert excinfo.value.cell == 7
