"""
Experiment orchestration: runs every scheme and grid level of a RunConfig
and writes the requested CSV artifacts.
"""

import os
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from app.analytics.metrics import (
    error_levels, error_norms, overshoot_metric, post_shock_oscillation, restrict_to_grid
)
from app.config import Config
from app.models.report import ErrorReport, RunResult
from app.models.run_config import OutputKind, RunConfig
from app.models.scheme import Scheme
from app.services.export import CsvExportService
from app.services.presets import get_preset
from app.services.problems import get_problem
from app.services.reference_cache import ReferenceCache
from app.services.simulation import SimulationService, primitive_fields
from app.services.trace import TraceSink
from app.utils.log import get_logger

logger = get_logger(__name__)


@dataclass
class ExperimentResult:
    """Files written by one experiment and the error reports behind its table."""
    name: str
    files: List[str] = field(default_factory=list)
    reports: List[ErrorReport] = field(default_factory=list)


def _time_label(time: float) -> str:
    return f"{time:g}"


def slice_profile(centers: Tuple[np.ndarray, np.ndarray], values: np.ndarray, axis: str,
                  coordinate: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    Values along `axis` at a fixed coordinate of the other axis.

    The fixed coordinate is interpolated linearly between the two nearest
    cell centers (clamped to the first/last center).

    Args:
        centers: (x centers, y centers)
        values: Field shaped (nx, ny)
        axis: 'x' for a profile along x at y = coordinate, 'y' for the converse
        coordinate: Fixed coordinate

    Returns:
        (coordinates along the slice, values)
    """
    if axis == 'x':
        along, across, table = centers[0], centers[1], values
    else:
        along, across, table = centers[1], centers[0], values.T

    upper = int(np.clip(np.searchsorted(across, coordinate), 1, len(across) - 1))
    lower = upper - 1
    theta = float(np.clip((coordinate - across[lower]) / (across[upper] - across[lower]), 0.0, 1.0))
    return along, (1.0 - theta) * table[:, lower] + theta * table[:, upper]


class ExperimentRunner:
    """
    Runs one RunConfig end to end.
    """

    def __init__(
        self,
        config: RunConfig,
        output_dir: str,
        reference_dir: str,
        workers: int = 1,
        trace: bool = False,
        full_precision: bool = False,
        progress_every: int = 0
    ):
        self.config = config
        self.problem = get_problem(config.problem)
        self.simulation = SimulationService(workers=workers, progress_every=progress_every)
        self.exporter = CsvExportService(output_dir, full_precision or config.full_precision)
        self.references = ReferenceCache(reference_dir)
        self.trace = (trace or OutputKind.TRACE in config.outputs) and self.problem.dimension == 1

    def schemes(self) -> List[Scheme]:
        schemes = self.config.schemes()
        if self.config.ilw_baseline and not any(scheme.ideal for scheme in schemes):
            schemes.insert(0, self.config.build_scheme('ilw'))
        return schemes

    def run(self) -> ExperimentResult:
        config = self.config
        result = ExperimentResult(config.label)
        errors: Dict[str, Dict[int, Dict[float, Tuple[float, float]]]] = {}
        summary_rows = []

        for scheme in self.schemes():
            errors[scheme.label] = {}
            for n in config.grid_sizes:
                sink = TraceSink(enabled=self.trace)
                run = self.simulation.run(
                    config.problem, scheme, n, config.output_times,
                    cfl=config.cfl_rule, boundary=config.boundary_kind, trace=sink
                )
                if OutputKind.ERROR_TABLE in config.outputs:
                    errors[scheme.label][n] = self._errors(run, n)
                if OutputKind.FIELD in config.outputs:
                    result.files.extend(self._fields(run, scheme, n))
                if OutputKind.SLICE in config.outputs:
                    result.files.extend(self._slices(run, scheme, n))
                if OutputKind.SUMMARY in config.outputs:
                    summary_rows.extend(self._summary(run, scheme, n))
                if self.trace:
                    path = self.exporter.path(f"{config.label}_{scheme.name}_n{n}_trace.csv")
                    result.files.append(sink.write(path))

        if OutputKind.ERROR_TABLE in config.outputs:
            result.reports = self._reports(errors)
            result.files.append(self.exporter.export_errors(result.reports, f"{config.label}_errors.csv"))
        if OutputKind.SUMMARY in config.outputs:
            result.files.append(self.exporter.export_summary(summary_rows, f"{config.label}_summary.csv"))

        return result

    # ------------------------------------------------------------------
    # Errors
    # ------------------------------------------------------------------
    def _reference(self, grid, time: float) -> np.ndarray:
        """First conserved component (u or ρ) of the exact or reference solution."""
        if self.problem.spec.has_exact or time == 0:
            return self.problem.cell_averages(grid, time)[0]

        n_ref = self.config.reference_n
        js = Scheme.from_name('js').with_epsilon(self.config.epsilon)

        def compute():
            run = self.simulation.run(self.config.problem, js, n_ref, [time],
                                      cfl=self.config.cfl_rule, boundary=self.config.boundary_kind)
            return run.centers[0], run.final.data

        _, conserved = self.references.get(self.config.problem.value, n_ref, time, compute)
        fine = self.simulation.make_grid(self.config.problem, n_ref)
        return restrict_to_grid(conserved[0], fine.edges, grid.edges)

    def _errors(self, run: RunResult, n: int) -> Dict[float, Tuple[float, float]]:
        grid = self.simulation.make_grid(self.config.problem, n)
        return {
            time: error_norms(snapshot.data[0], self._reference(grid, time), grid.spacing)
            for time, snapshot in run.snapshots.items()
        }

    def _reports(self, errors: Dict[str, Dict[int, Dict[float, Tuple[float, float]]]]) -> List[ErrorReport]:
        sizes = self.config.grid_sizes
        dimension = self.problem.dimension
        baseline_label = next((s.label for s in self.schemes() if s.ideal), None)

        reports = []
        for label, by_size in errors.items():
            report = ErrorReport(label, self.config.problem.value)
            for time in self.config.output_times:
                rows = [by_size[n][time] for n in sizes]
                baseline = None
                if baseline_label is not None and label != baseline_label:
                    baseline = [errors[baseline_label][n][time] for n in sizes]
                for level in error_levels([(n,) * dimension for n in sizes], rows, baseline, time):
                    report.add(level)
            reports.append(report)
        return reports

    # ------------------------------------------------------------------
    # Fields, slices, summaries
    # ------------------------------------------------------------------
    def _fields(self, run: RunResult, scheme: Scheme, n: int) -> List[str]:
        paths = []
        for time, snapshot in sorted(run.snapshots.items()):
            filename = f"{self.config.label}_{scheme.name}_n{n}_t{_time_label(time)}.csv"
            primitive = primitive_fields(self.config.problem, snapshot.data)
            paths.append(self.exporter.export_field(run.centers, primitive, filename))
        return paths

    def _slices(self, run: RunResult, scheme: Scheme, n: int) -> List[str]:
        axis = self.config.slice_axis
        fixed = 'y' if axis == 'x' else 'x'
        density = primitive_fields(self.config.problem, run.final.data)[0]

        paths = []
        for coordinate in self.config.slice_at:
            along, values = slice_profile(run.centers, density, axis, coordinate)
            filename = f"{self.config.label}_{scheme.name}_n{n}_slice_{fixed}{_time_label(coordinate)}.csv"
            paths.append(self.exporter.export_slice(along, values, filename, axis=axis))
        return paths

    def _bounds(self, n: int) -> Tuple[float, float]:
        grid = self.simulation.make_grid(self.config.problem, n)
        initial = primitive_fields(self.config.problem, self.problem.cell_averages(grid))[0]
        return float(initial.min()), float(initial.max())

    def _summary(self, run: RunResult, scheme: Scheme, n: int) -> List[dict]:
        lower, upper = self._bounds(n)
        rows = []

        for time, snapshot in sorted(run.snapshots.items()):
            values = primitive_fields(self.config.problem, snapshot.data)[0]
            profiles = [('', values.reshape(-1))] if values.ndim == 1 else [
                (f"{'y' if self.config.slice_axis == 'x' else 'x'}={c:g}",
                 slice_profile(run.centers, values, self.config.slice_axis, c)[1])
                for c in self.config.slice_at
            ]
            for label, profile in profiles:
                rows.append({
                    'scheme': scheme.label,
                    'n': n,
                    'time': time,
                    'slice': label,
                    'min': float(profile.min()),
                    'max': float(profile.max()),
                    'overshoot': overshoot_metric(profile, lower, upper),
                    'oscillation': post_shock_oscillation(profile),
                })
        return rows


def with_environment_numerics(config: RunConfig, app_config: Config) -> RunConfig:
    """ε and the tie tolerance from the environment unless the run sets them."""
    updates = {
        key: value for key, value in (('epsilon', app_config.EPSILON), ('tie_tol', app_config.TIE_TOLERANCE))
        if key not in config.model_fields_set
    }
    return config.model_copy(update=updates) if updates else config


def run_experiment(
    config: Union[RunConfig, str],
    output_dir: Optional[str] = None,
    workers: Optional[int] = None,
    trace: bool = False,
    full_precision: Optional[bool] = None,
    app_config: Optional[Config] = None
) -> ExperimentResult:
    """
    Run a configuration or a named preset and write its CSV artifacts.

    Args:
        config: RunConfig or preset name
        output_dir: Directory for the CSV files (default: app_config.OUTPUT_DIR)
        workers: Solver threads (default: app_config.WORKERS)
        trace: Record mapping traces for 1D runs even if not requested
        full_precision: Write 17 significant digits instead of 6
        app_config: Environment configuration (default: Config())

    Returns:
        ExperimentResult listing the files written

    Raises:
        ConfigParseError: Unknown preset name
        DivergenceError: A run blew up
        OutputError: A file could not be written
    """
    app_config = app_config or Config()
    if isinstance(config, str):
        config = get_preset(config).config
    config = with_environment_numerics(config, app_config)

    output_dir = output_dir or app_config.OUTPUT_DIR
    runner = ExperimentRunner(
        config,
        output_dir=output_dir,
        reference_dir=app_config.REFERENCE_CACHE_DIR,
        workers=workers or app_config.WORKERS,
        trace=trace,
        full_precision=app_config.FULL_PRECISION if full_precision is None else full_precision,
        progress_every=app_config.PROGRESS_EVERY,
    )

    logger.info(f"Running experiment {config.label} into {os.path.abspath(output_dir)}")
    result = runner.run()
    logger.info(f"Experiment {config.label} wrote {len(result.files)} files")
    return result
