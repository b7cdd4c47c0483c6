"""
CSV emission for error tables, solution fields, slices and summaries.

Values are written with 6 significant digits in scientific notation
(e.g. 1.53437E-03) unless full precision is requested.
"""

import os
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from app.exceptions import InvalidInputError, OutputError
from app.models.report import ErrorReport
from app.utils.log import get_logger

TABLE_FORMAT = '%.5E'
FULL_FORMAT = '%.17g'

ERROR_COLUMNS = ['scheme', 'time', 'n', 'l1', 'l1_order', 'linf', 'linf_order', 'chi1', 'chi_inf']
SUMMARY_COLUMNS = ['scheme', 'n', 'time', 'slice', 'min', 'max', 'overshoot', 'oscillation']

FIELD_NAMES = {
    1: ['u'],
    3: ['rho', 'u', 'p'],
    4: ['rho', 'u', 'v', 'p'],
}


def error_frame(reports: Sequence[ErrorReport]) -> pd.DataFrame:
    rows = []
    for report in reports:
        for level in report.levels:
            rows.append([
                report.scheme, level.time, level.n_label, level.l1, level.l1_order,
                level.linf, level.linf_order, level.chi1, level.chi_inf,
            ])
    return pd.DataFrame(rows, columns=ERROR_COLUMNS)


def field_frame(centers: Sequence[np.ndarray], primitive: np.ndarray) -> pd.DataFrame:
    """
    One row per cell with coordinates and primitive variables.

    Args:
        centers: Cell-center coordinates per axis
        primitive: (m, N) or (m, nx, ny) primitive variables (m = 1 for scalars)
    """
    primitive = np.asarray(primitive, dtype=float)
    names = FIELD_NAMES.get(primitive.shape[0])
    if names is None:
        raise InvalidInputError(f"no column names for {primitive.shape[0]} variables")

    if len(centers) == 1:
        columns = {'x': centers[0]}
    else:
        x, y = np.meshgrid(centers[0], centers[1], indexing='ij')
        columns = {'x': x.reshape(-1), 'y': y.reshape(-1)}

    for name, values in zip(names, primitive):
        columns[name] = values.reshape(-1)
    return pd.DataFrame(columns)


def slice_frame(coordinates: np.ndarray, values: np.ndarray, axis: str = 'x', name: str = 'rho') -> pd.DataFrame:
    return pd.DataFrame({axis: coordinates, name: values})


def summary_frame(rows: List[Dict]) -> pd.DataFrame:
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


class CsvExportService:
    """
    Service for writing run artifacts as CSV files.
    """

    def __init__(self, output_dir: str, full_precision: bool = False):
        self.output_dir = output_dir
        self.float_format = FULL_FORMAT if full_precision else TABLE_FORMAT
        self.logger = get_logger(__name__)

    def path(self, filename: str) -> str:
        return os.path.join(self.output_dir, filename)

    def emit_csv(self, frame: pd.DataFrame, filename: str) -> str:
        """
        Write a frame as RFC 4180 CSV.

        Args:
            frame: Table to write; an empty frame gives a header-only file
            filename: Name relative to the output directory

        Returns:
            Path of the written file

        Raises:
            OutputError: If the file cannot be written
        """
        path = self.path(filename)
        try:
            os.makedirs(self.output_dir, exist_ok=True)
            frame.to_csv(path, index=False, float_format=self.float_format, lineterminator='\r\n')
        except OSError as e:
            self.logger.error(f"Failed to write {path}: {str(e)}")
            raise OutputError(f"cannot write {path}: {e}") from e

        self.logger.debug(f"Wrote {len(frame)} rows to {path}")
        return path

    def export_errors(self, reports: Sequence[ErrorReport], filename: str) -> str:
        return self.emit_csv(error_frame(reports), filename)

    def export_field(self, centers: Sequence[np.ndarray], primitive: np.ndarray, filename: str) -> str:
        return self.emit_csv(field_frame(centers, primitive), filename)

    def export_slice(self, coordinates: np.ndarray, values: np.ndarray, filename: str,
                     axis: str = 'x', name: str = 'rho') -> str:
        return self.emit_csv(slice_frame(coordinates, values, axis, name), filename)

    def export_summary(self, rows: List[Dict], filename: str) -> str:
        return self.emit_csv(summary_frame(rows), filename)


def emit_csv(frame: pd.DataFrame, path: str, full_precision: bool = False,
             float_format: Optional[str] = None) -> str:
    """Write one frame to an explicit path."""
    service = CsvExportService(os.path.dirname(os.path.abspath(path)), full_precision)
    if float_format is not None:
        service.float_format = float_format
    return service.emit_csv(frame, os.path.basename(path))
