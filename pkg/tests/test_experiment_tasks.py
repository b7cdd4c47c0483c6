import os

import numpy as np
import pandas as pd
import pytest

from app.models.grid import Grid1D
from app.models.problem import ProblemId
from app.models.run_config import OutputKind, RunConfig
from app.services.problems import get_problem
from tasks.experiment_tasks import run_experiment, slice_profile, with_environment_numerics


def names(result):
    return sorted(os.path.basename(path) for path in result.files)


@pytest.fixture
def sine_config():
    """Two grid levels, ILW baseline and one LOP scheme."""
    return RunConfig(
        problem=ProblemId.SINE_1D, compare=['lop-m'], n=[20, 40], t_final=0.1,
        outputs=[OutputKind.ERROR_TABLE, OutputKind.FIELD], ilw_baseline=True,
    )


class TestSliceProfile:
    """Interpolated slices of 2D fields."""

    def test_between_centers(self):
        """A coordinate between centers is interpolated linearly."""
        centers = (np.array([0.25, 0.75]), np.array([0.25, 0.75]))
        values = np.array([[0.0, 1.0], [2.0, 3.0]])
        along, profile = slice_profile(centers, values, 'x', 0.5)
        np.testing.assert_array_equal(along, [0.25, 0.75])
        np.testing.assert_allclose(profile, [0.5, 2.5])

    def test_along_y(self):
        """Slices along y fix x."""
        centers = (np.array([0.25, 0.75]), np.array([0.25, 0.75]))
        values = np.array([[0.0, 1.0], [2.0, 3.0]])
        _, profile = slice_profile(centers, values, 'y', 0.75)
        np.testing.assert_allclose(profile, [2.0, 3.0])


class TestRunExperiment:
    """End-to-end runs on small grids."""

    def test_error_table_and_fields(self, sine_config, app_config, tmp_output):
        """Errors for every scheme and level plus one field file per run."""
        result = run_experiment(sine_config, output_dir=str(tmp_output), app_config=app_config)

        assert names(result) == sorted([
            'sine-js_errors.csv',
            'sine-js_ilw_n20_t0.1.csv', 'sine-js_ilw_n40_t0.1.csv',
            'sine-js_js_n20_t0.1.csv', 'sine-js_js_n40_t0.1.csv',
            'sine-js_lop-m_n20_t0.1.csv', 'sine-js_lop-m_n40_t0.1.csv',
        ])

        errors = pd.read_csv(tmp_output / 'sine-js_errors.csv')
        assert list(errors['scheme']) == ['WENO5-ILW'] * 2 + ['WENO-JS'] * 2 + ['LOP-WENO-M'] * 2
        assert errors['chi1'].isna().sum() == 2
        assert (errors['l1'] < 1e-2).all()
        assert errors['l1_order'].dropna().min() > 2.5

        assert [report.scheme for report in result.reports] == ['WENO5-ILW', 'WENO-JS', 'LOP-WENO-M']

        field = pd.read_csv(tmp_output / 'sine-js_lop-m_n20_t0.1.csv')
        assert list(field.columns) == ['x', 'u']
        assert len(field) == 20

    def test_runs_are_reproducible(self, sine_config, app_config, tmp_path):
        """Two runs write byte-identical files."""
        first = run_experiment(sine_config, output_dir=str(tmp_path / 'a'), app_config=app_config)
        second = run_experiment(sine_config, output_dir=str(tmp_path / 'b'), app_config=app_config)
        for path_a, path_b in zip(sorted(first.files), sorted(second.files)):
            with open(path_a, 'rb') as a, open(path_b, 'rb') as b:
                assert a.read() == b.read(), path_a

    def test_zero_time_returns_initial_averages(self, app_config, tmp_output):
        """t_final = 0 writes the initial cell averages."""
        config = RunConfig(problem=ProblemId.SINE_1D, scheme='lop-m', n=[20], t_final=0.0)
        run_experiment(config, output_dir=str(tmp_output), full_precision=True, app_config=app_config)

        field = pd.read_csv(tmp_output / 'sine-lop-m_lop-m_n20_t0.csv')
        expected = get_problem('sine').cell_averages(Grid1D(-1.0, 1.0, 20))[0]
        np.testing.assert_array_equal(field['u'].to_numpy(), expected)

    def test_reference_solution_errors(self, app_config, tmp_output):
        """Problems without a closed form are compared with a cached fine run."""
        config = RunConfig(
            problem=ProblemId.SHU_OSHER, n=[20], reference_n=40, t_final=0.05,
            outputs=[OutputKind.ERROR_TABLE],
        )
        result = run_experiment(config, output_dir=str(tmp_output), app_config=app_config)

        assert names(result) == ['shu-osher-js_errors.csv']
        assert os.path.exists(os.path.join(app_config.REFERENCE_CACHE_DIR, 'shu-osher_n40_t0.05.csv'))
        level = result.reports[0].levels[0]
        assert 0.0 < level.l1 < 1.0

    def test_shock_vortex_slice(self, app_config, tmp_output):
        """A density slice has one row per cell along the axis."""
        config = RunConfig(
            problem=ProblemId.SHOCK_VORTEX, n=[12], t_final=0.01,
            outputs=[OutputKind.SLICE, OutputKind.SUMMARY], slice_at=[0.65],
        )
        result = run_experiment(config, output_dir=str(tmp_output), app_config=app_config)

        assert names(result) == ['shock-vortex-js_js_n12_slice_y0.65.csv', 'shock-vortex-js_summary.csv']
        profile = pd.read_csv(tmp_output / 'shock-vortex-js_js_n12_slice_y0.65.csv')
        assert list(profile.columns) == ['x', 'rho']
        assert len(profile) == 12

        summary = pd.read_csv(tmp_output / 'shock-vortex-js_summary.csv')
        assert list(summary['slice']) == ['y=0.65']
        assert (summary['overshoot'] >= 0).all()

    def test_mapping_trace(self, app_config, tmp_output):
        """Traces hold one record per output time and interface."""
        config = RunConfig(
            problem=ProblemId.SINE_1D, scheme='m', n=[20], t_outputs=[0.0, 0.05],
            outputs=[OutputKind.TRACE],
        )
        result = run_experiment(config, output_dir=str(tmp_output), app_config=app_config)

        assert names(result) == ['sine-m_m_n20_trace.csv']
        trace = pd.read_csv(tmp_output / 'sine-m_m_n20_trace.csv')
        assert len(trace) == 40
        assert list(trace['time'].unique()) == [0.0, 0.05]
        weights = trace[['w0', 'w1', 'w2']].sum(axis=1)
        np.testing.assert_allclose(weights, 1.0, atol=1e-12)

    def test_preset_name(self, app_config, tmp_output, mocker):
        """A preset name is resolved before running."""
        run = mocker.patch('tasks.experiment_tasks.ExperimentRunner.run')
        run_experiment('step-t2000-desk', output_dir=str(tmp_output), app_config=app_config)
        run.assert_called_once()


class TestEnvironmentNumerics:
    """WENO_EPSILON and WENO_TIE_TOLERANCE reach the schemes."""

    def test_unset_fields_take_environment_values(self, app_config):
        """Runs that leave ε and the tie tolerance unset use the configured ones."""
        app_config.EPSILON = 1e-6
        app_config.TIE_TOLERANCE = 1e-10
        config = with_environment_numerics(RunConfig(problem=ProblemId.SINE_1D, scheme='lop-m'), app_config)

        scheme = config.build_scheme()
        assert scheme.params.epsilon == 1e-6
        assert scheme.tie_tol == 1e-10

    def test_explicit_fields_win(self, app_config):
        """Values written in the run configuration are kept."""
        app_config.EPSILON = 1e-6
        config = RunConfig(problem=ProblemId.SINE_1D, epsilon=1e-30)
        assert with_environment_numerics(config, app_config).epsilon == 1e-30

    def test_run_experiment_applies_environment(self, app_config, tmp_output, mocker):
        """run_experiment hands the adjusted configuration to the runner."""
        app_config.EPSILON = 1e-8
        runner = mocker.patch('tasks.experiment_tasks.ExperimentRunner')
        run_experiment(RunConfig(problem=ProblemId.SINE_1D), output_dir=str(tmp_output), app_config=app_config)
        assert runner.call_args.args[0].epsilon == 1e-8
