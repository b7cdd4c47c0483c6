import numpy as np
import pandas as pd
import pytest

from app.exceptions import ContractViolationError, OutputError
from app.models.report import ErrorLevel, ErrorReport, MappingTraceRecord
from app.models.weights import WeightTriple
from app.services.export import ERROR_COLUMNS, CsvExportService, emit_csv
from app.services.reconstruction import WeightDiagnostics
from app.services.reference_cache import ReferenceCache
from app.services.trace import TRACE_COLUMNS, TraceSink, record_mapping_trace


class TestCsvExport:
    """CSV artifacts."""

    def test_empty_report_is_header_only(self, tmp_output):
        """No rows gives just the header line, CRLF terminated."""
        path = CsvExportService(str(tmp_output)).export_errors([], 'errors.csv')
        with open(path, 'rb') as handle:
            content = handle.read()
        assert content == (','.join(ERROR_COLUMNS) + '\r\n').encode()

    def test_error_table_format(self, tmp_output):
        """Errors are written with 6 significant digits."""
        report = ErrorReport('WENO-JS', 'sine')
        report.add(ErrorLevel((40,), 1.534371e-3, 2.5e-3, time=2.0))
        report.add(ErrorLevel((80,), 4.8e-5, 7.9e-5, l1_order=4.998, linf_order=4.98, time=2.0))
        path = CsvExportService(str(tmp_output)).export_errors([report], 'errors.csv')

        with open(path, newline='') as handle:
            lines = handle.read().split('\r\n')
        assert lines[1].startswith('WENO-JS,2.00000E+00,40,1.53437E-03,,2.50000E-03')
        assert '4.99800E+00' in lines[2]

    def test_full_precision(self, tmp_output):
        """Full precision keeps 17 significant digits."""
        frame = pd.DataFrame({'x': [1.0 / 3.0]})
        path = CsvExportService(str(tmp_output), full_precision=True).emit_csv(frame, 'x.csv')
        assert float(pd.read_csv(path)['x'][0]) == 1.0 / 3.0

    def test_one_dimensional_field(self, tmp_output):
        """One row per cell with x and the primitive variables."""
        centers = (np.array([0.125, 0.375, 0.625, 0.875]),)
        primitive = np.array([[1.0, 2.0, 3.0, 4.0], [0.0] * 4, [1.0] * 4])
        path = CsvExportService(str(tmp_output)).export_field(centers, primitive, 'field.csv')
        frame = pd.read_csv(path)
        assert list(frame.columns) == ['x', 'rho', 'u', 'p']
        assert len(frame) == 4

    def test_two_dimensional_field(self, tmp_output):
        """2D fields list every cell with x and y."""
        centers = (np.array([0.25, 0.75]), np.array([0.1, 0.2, 0.3]))
        primitive = np.ones((4, 2, 3))
        frame = pd.read_csv(CsvExportService(str(tmp_output)).export_field(centers, primitive, 'f2.csv'))
        assert list(frame.columns) == ['x', 'y', 'rho', 'u', 'v', 'p']
        assert len(frame) == 6

    def test_unwritable_directory(self, tmp_path):
        """Write failures raise OutputError."""
        blocker = tmp_path / 'file'
        blocker.write_text('not a directory')
        with pytest.raises(OutputError):
            emit_csv(pd.DataFrame({'a': [1]}), str(blocker / 'out.csv'))


class TestTrace:
    """Mapping trace records and sinks."""

    def triple(self, *values):
        return WeightTriple(*values, normalized=True)

    def test_disabled_sink_is_noop(self):
        """Nothing is recorded by a disabled or missing sink."""
        sink = TraceSink(enabled=False)
        assert record_mapping_trace(sink, 0, 0.0, self.triple(0.1, 0.6, 0.3), self.triple(0.1, 0.6, 0.3), True) is None
        assert record_mapping_trace(None, 0, 0.0, self.triple(0.1, 0.6, 0.3), self.triple(0.1, 0.6, 0.3), True) is None
        assert sink.records == []

    def test_unnormalized_final_weights_are_normalized(self):
        """Final weights are stored normalized."""
        sink = TraceSink()
        record = record_mapping_trace(sink, 3, 1.0, self.triple(0.1, 0.6, 0.3), WeightTriple(1.0, 2.0, 1.0), False)
        assert tuple(record.final_weight) == pytest.approx((0.25, 0.5, 0.25))

    def test_record_requires_normalized_weights(self):
        """Records reject unnormalized final weights."""
        with pytest.raises(ContractViolationError):
            MappingTraceRecord(0.0, 0, 0, self.triple(0.1, 0.6, 0.3), WeightTriple(1.0, 1.0, 1.0), True)

    def test_written_in_time_cell_field_order(self, tmp_output):
        """Records are sorted by (time, cell, field) however they arrive."""
        sink = TraceSink()
        w = self.triple(0.1, 0.6, 0.3)
        for time, cell in ((1.0, 2), (0.0, 5), (1.0, 0), (0.0, 1)):
            record_mapping_trace(sink, cell, time, w, w, True)
        path = sink.write(str(tmp_output / 'trace.csv'))
        frame = pd.read_csv(path)
        assert list(frame.columns) == TRACE_COLUMNS
        assert list(zip(frame['time'], frame['cell'])) == [(0.0, 1), (0.0, 5), (1.0, 0), (1.0, 2)]

    def test_record_diagnostics(self):
        """One record per cell and field."""
        omega = np.broadcast_to(np.array([0.1, 0.6, 0.3])[:, None, None], (3, 2, 4))
        diagnostics = WeightDiagnostics(omega, omega, np.ones((2, 4), dtype=bool))
        sink = TraceSink()
        assert sink.record_diagnostics(0.5, diagnostics) == 8
        assert {(r.cell, r.field) for r in sink.records} == {(c, f) for c in range(4) for f in range(2)}


class TestReferenceCache:
    """Fine-grid reference solutions on disk."""

    def test_computes_once_and_reloads(self, tmp_path):
        """A second cache instance reads the stored file instead of computing."""
        calls = []

        def compute():
            calls.append(1)
            return np.array([0.5, 1.5]), np.array([[1.0, 2.0], [0.1, 0.2], [2.5, 2.6]])

        first = ReferenceCache(str(tmp_path))
        centers, conserved = first.get('shu-osher', 2, 1.8, compute)
        first.get('shu-osher', 2, 1.8, compute)
        assert len(calls) == 1

        second = ReferenceCache(str(tmp_path))
        centers2, conserved2 = second.get('shu-osher', 2, 1.8, compute)
        assert len(calls) == 1
        np.testing.assert_array_equal(centers2, centers)
        np.testing.assert_array_equal(conserved2, conserved)

    def test_filename(self, tmp_path):
        """Files are named by problem, size and time."""
        path = ReferenceCache(str(tmp_path)).filename('titarev-toro', 10000, 5.0)
        assert path.endswith('titarev-toro_n10000_t5.csv')
