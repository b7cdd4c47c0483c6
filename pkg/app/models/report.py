"""
Result records produced by runs: error tables, traces and run results.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.exceptions import ContractViolationError
from app.models.weights import WeightTriple


@dataclass
class ErrorLevel:
    """
    Errors of one scheme on one grid level.

    Orders are None on the first level; χ values are None without an
    ILW baseline.
    """
    n: Tuple[int, ...]
    l1: float
    linf: float
    l1_order: Optional[float] = None
    linf_order: Optional[float] = None
    chi1: Optional[float] = None
    chi_inf: Optional[float] = None
    time: Optional[float] = None

    @property
    def n_label(self) -> str:
        return 'x'.join(str(n) for n in self.n)


@dataclass
class ErrorReport:
    """Error rows of one scheme, ordered by time then grid level."""
    scheme: str
    problem: str
    levels: List[ErrorLevel] = field(default_factory=list)

    def add(self, level: ErrorLevel) -> None:
        self.levels.append(level)

    def __len__(self) -> int:
        return len(self.levels)


@dataclass(frozen=True)
class MappingTraceRecord:
    """
    Weights of one characteristic field of one global stencil at one time.

    Attributes:
        time: Output time
        cell: Interface index (interface j+1/2 has index j)
        field: Characteristic field index (0 for scalar problems)
        omega_js: Normalized WENO-JS weights
        final_weight: Normalized weights actually used
        op_flag: Whether the stencil was classified OP
    """
    time: float
    cell: int
    field: int
    omega_js: WeightTriple
    final_weight: WeightTriple
    op_flag: bool

    def __post_init__(self):
        if not self.final_weight.normalized:
            raise ContractViolationError("trace records need normalized final weights")

    @property
    def sort_key(self) -> Tuple[float, int, int]:
        return (self.time, self.cell, self.field)


@dataclass
class Snapshot:
    """Cell averages of one run at one output time."""
    time: float
    data: np.ndarray
    steps: int


@dataclass
class RunResult:
    """
    Everything one (problem, scheme, grid) run produced.

    Attributes:
        scheme: Scheme label
        n: Cells per axis
        centers: Cell-center coordinates per axis
        snapshots: Solution at each requested output time
    """
    scheme: str
    n: Tuple[int, ...]
    centers: Tuple[np.ndarray, ...]
    snapshots: Dict[float, Snapshot] = field(default_factory=dict)

    @property
    def final(self) -> Snapshot:
        return self.snapshots[max(self.snapshots)]
