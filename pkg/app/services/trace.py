"""
Real-time mapping traces.

A trace sink collects one MappingTraceRecord per (output time, interface,
characteristic field) and writes them as CSV ordered by (time, cell, field).
"""

import os
import threading
from typing import List, Optional

import numpy as np
import pandas as pd

from app.exceptions import OutputError
from app.models.report import MappingTraceRecord
from app.models.weights import WeightTriple
from app.services.reconstruction import WeightDiagnostics
from app.utils.log import get_logger

TRACE_COLUMNS = [
    'time', 'cell', 'field',
    'omega0_js', 'omega1_js', 'omega2_js',
    'w0', 'w1', 'w2',
    'op_flag',
]


class TraceSink:
    """
    Thread-safe collector of mapping trace records.

    A disabled sink accepts records and drops them.
    """

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self.records: List[MappingTraceRecord] = []
        self._lock = threading.Lock()
        self.logger = get_logger(__name__)

    def append(self, record: MappingTraceRecord) -> None:
        if not self.enabled:
            return
        with self._lock:
            self.records.append(record)

    def record_diagnostics(self, time: float, diagnostics: WeightDiagnostics) -> int:
        """
        Append every stencil of a reconstruction call.

        Args:
            time: Output time
            diagnostics: Arrays shaped (3, fields, cells)

        Returns:
            Number of records added
        """
        if not self.enabled:
            return 0

        omega_js = np.asarray(diagnostics.omega_js)
        omega = np.asarray(diagnostics.omega)
        is_op = np.asarray(diagnostics.is_op)
        n_fields, n_cells = omega.shape[1:]

        for cell in range(n_cells):
            for field in range(n_fields):
                record_mapping_trace(
                    self, cell, time,
                    WeightTriple.from_array(omega_js[:, field, cell], normalized=True),
                    WeightTriple.from_array(omega[:, field, cell], normalized=True),
                    bool(is_op[field, cell]),
                    field=field
                )
        return n_cells * n_fields

    def sorted_records(self) -> List[MappingTraceRecord]:
        with self._lock:
            return sorted(self.records, key=lambda record: record.sort_key)

    def to_frame(self) -> pd.DataFrame:
        rows = [
            [r.time, r.cell, r.field, *r.omega_js, *r.final_weight, int(r.op_flag)]
            for r in self.sorted_records()
        ]
        return pd.DataFrame(rows, columns=TRACE_COLUMNS)

    def write(self, path: str, float_format: Optional[str] = '%.17g') -> str:
        """
        Write the trace CSV.

        Raises:
            OutputError: If the file cannot be written
        """
        frame = self.to_frame()
        try:
            os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
            frame.to_csv(path, index=False, float_format=float_format, lineterminator='\r\n')
        except OSError as e:
            self.logger.error(f"Failed to write trace {path}: {str(e)}")
            raise OutputError(f"cannot write trace {path}: {e}") from e

        self.logger.info(f"Wrote {len(frame)} trace records to {path}")
        return path


def record_mapping_trace(
    sink: Optional[TraceSink],
    cell: int,
    time: float,
    omega_js: WeightTriple,
    final: WeightTriple,
    op_flag: bool,
    field: int = 0
) -> Optional[MappingTraceRecord]:
    """
    Append one record to a sink; a missing or disabled sink is a no-op.

    Returns:
        The record, or None when nothing was recorded
    """
    if sink is None or not sink.enabled:
        return None
    if not final.normalized:
        final = WeightTriple.from_array(np.asarray(final) / sum(final), normalized=True)
    record = MappingTraceRecord(time, int(cell), int(field), omega_js, final, bool(op_flag))
    sink.append(record)
    return record
