import numpy as np
import pytest

from app import create_app
from app.models.grid import BoundaryKind, Grid1D, Grid2D
from app.models.scheme import MappingKind, Scheme


@pytest.fixture
def app():
    """Testing configuration with logging and output directories set up."""
    return create_app('testing')


@pytest.fixture
def tmp_output(tmp_path):
    """Empty output directory for CSV artifacts."""
    out = tmp_path / 'output'
    out.mkdir()
    return out


@pytest.fixture
def app_config(app, tmp_path):
    """Testing configuration writing into a per-test directory."""
    app.OUTPUT_DIR = str(tmp_path / 'output')
    app.REFERENCE_CACHE_DIR = str(tmp_path / 'reference')
    return app


@pytest.fixture
def mapping_kinds():
    """Every mapping family at its recommended parameters."""
    return [
        MappingKind.m(),
        MappingKind.pm(6),
        MappingKind.im(2, 0.1),
        MappingKind.ppm5(),
        MappingKind.rm260(),
        MappingKind.acm(),
    ]


@pytest.fixture
def js_scheme():
    return Scheme.from_name('js')


@pytest.fixture
def lop_m_scheme():
    return Scheme.from_name('lop-m')


@pytest.fixture
def periodic_grid():
    return Grid1D(-1.0, 1.0, 40)


@pytest.fixture
def square_grid():
    return Grid2D((-1.0, 1.0), (-1.0, 1.0), 10, 10)


@pytest.fixture
def periodic():
    return BoundaryKind.PERIODIC


@pytest.fixture
def monomial_averages():
    """Exact averages of x**power over cells of width h centered at `centers`."""
    def averages(centers, power, h=1.0):
        centers = np.asarray(centers, dtype=float)
        upper = (centers + 0.5 * h) ** (power + 1)
        lower = (centers - 0.5 * h) ** (power + 1)
        return (upper - lower) / ((power + 1) * h)
    return averages
