"""
Run configuration model.

A RunConfig fully describes one experiment: which problem, which scheme,
which grid levels, how far to integrate and what to write. It is produced
by app.services.config_parser from the `key = value` text format or built
by the preset registry.
"""

import enum
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.models.cfl import CflRule
from app.models.grid import BoundaryKind
from app.models.problem import ProblemId, get_problem_spec
from app.models.scheme import Scheme


class OutputKind(enum.Enum):
    ERROR_TABLE = "error_table"
    FIELD = "field"
    TRACE = "trace"
    SLICE = "slice"
    SUMMARY = "summary"


class RunConfig(BaseModel):
    """
    Validated experiment configuration.

    Grid sizes are cells per axis; 2D problems use square n × n grids.
    Unset `cfl`, `t_final` and `boundary` fall back to the problem defaults.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True, extra='forbid')

    name: Optional[str] = None
    problem: ProblemId
    scheme: str = 'js'
    lop: bool = False
    strict: bool = False

    # Mapping parameters (only the ones of the selected family are used)
    pm_k: Optional[int] = None
    im_k: Optional[int] = None
    im_a: Optional[float] = None
    acm_a: Optional[float] = None
    acm_k: Optional[int] = None
    acm_delta: Optional[float] = None
    acm_cfs: Optional[float] = None
    acm_cfs_bar: Optional[float] = None

    n: List[int] = Field(default_factory=list)
    cfl: Optional[CflRule] = None
    t_final: Optional[float] = None
    t_outputs: List[float] = Field(default_factory=list)
    boundary: Optional[BoundaryKind] = None

    outputs: List[OutputKind] = Field(default_factory=lambda: [OutputKind.FIELD])
    compare: List[str] = Field(default_factory=list)
    ilw_baseline: bool = False
    reference_n: Optional[int] = None
    slice_axis: str = 'x'
    slice_at: List[float] = Field(default_factory=list)

    epsilon: float = 1e-40
    tie_tol: float = 1e-14
    full_precision: bool = False

    @field_validator('n')
    @classmethod
    def _grid_sizes(cls, value: List[int]) -> List[int]:
        for n in value:
            if n < 6:
                raise ValueError(f"grid size must be at least 6 cells per axis, got {n}")
        return value

    @field_validator('t_final')
    @classmethod
    def _nonnegative_time(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and value < 0:
            raise ValueError(f"t_final must be nonnegative, got {value}")
        return value

    @field_validator('t_outputs')
    @classmethod
    def _output_times(cls, value: List[float]) -> List[float]:
        if any(t < 0 for t in value):
            raise ValueError("output times must be nonnegative")
        return sorted(set(value))

    @field_validator('epsilon', 'tie_tol')
    @classmethod
    def _positive(cls, value: float) -> float:
        if not value > 0:
            raise ValueError(f"must be positive, got {value}")
        return value

    @field_validator('slice_axis')
    @classmethod
    def _axis(cls, value: str) -> str:
        if value not in ('x', 'y'):
            raise ValueError(f"slice_axis must be 'x' or 'y', got {value!r}")
        return value

    @field_validator('reference_n')
    @classmethod
    def _reference_size(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value < 6:
            raise ValueError(f"reference_n must be at least 6, got {value}")
        return value

    @model_validator(mode='after')
    def _consistent(self) -> 'RunConfig':
        self.build_scheme()
        for name in self.compare:
            self.build_scheme(name)

        spec = get_problem_spec(self.problem)
        if OutputKind.SLICE in self.outputs:
            if spec.dimension != 2:
                raise ValueError("slice output needs a 2D problem")
            lo, hi = spec.bounds[1] if self.slice_axis == 'x' else spec.bounds[0]
            if not self.slice_at:
                raise ValueError("slice output needs slice_at")
            for coordinate in self.slice_at:
                if not lo <= coordinate <= hi:
                    raise ValueError(f"slice coordinate {coordinate} outside [{lo}, {hi}]")
        if OutputKind.TRACE in self.outputs and spec.dimension != 1:
            raise ValueError("mapping traces are recorded for 1D problems only")
        if OutputKind.ERROR_TABLE in self.outputs and not spec.has_exact:
            if self.reference_n is None or spec.dimension != 1:
                raise ValueError(f"{self.problem.value} has no exact solution; error tables need reference_n (1D only)")
        return self

    # ------------------------------------------------------------------
    # Resolved values
    # ------------------------------------------------------------------
    @property
    def grid_sizes(self) -> List[int]:
        return self.n or [get_problem_spec(self.problem).default_n]

    @property
    def cfl_rule(self) -> CflRule:
        return self.cfl or get_problem_spec(self.problem).cfl

    @property
    def final_time(self) -> float:
        if self.t_final is not None:
            return self.t_final
        if self.t_outputs:
            return self.t_outputs[-1]
        return get_problem_spec(self.problem).t_final

    @property
    def output_times(self) -> List[float]:
        """All requested output times, ascending, ending at final_time."""
        times = [t for t in self.t_outputs if t <= self.final_time]
        if not times or times[-1] != self.final_time:
            times.append(self.final_time)
        return times

    @property
    def boundary_kind(self) -> BoundaryKind:
        return self.boundary or get_problem_spec(self.problem).boundary

    @property
    def label(self) -> str:
        return self.name or f"{self.problem.value}-{self.build_scheme().name}"

    def mapping_params(self, family_name: str) -> dict:
        if family_name == 'pm':
            return {'k': self.pm_k} if self.pm_k is not None else {}
        if family_name == 'im':
            params = {'k': self.im_k, 'A': self.im_a}
        elif family_name == 'acm':
            params = {
                'A': self.acm_a,
                'k': self.acm_k,
                'delta': self.acm_delta,
                'cfs_factor': self.acm_cfs,
                'cfs_bar_factor': self.acm_cfs_bar,
            }
        else:
            return {}
        return {key: value for key, value in params.items() if value is not None}

    def build_scheme(self, name: Optional[str] = None) -> Scheme:
        """
        Resolve a scheme name into a Scheme with this run's parameters.

        Args:
            name: Scheme name; defaults to `scheme` with the `lop` flag applied

        Returns:
            Scheme instance
        """
        if name is None:
            name = self.scheme
            if self.lop and not name.startswith('lop-') and name != 'ilw':
                name = 'lop-' + name

        family = name[len('lop-'):] if name.startswith('lop-') else name
        family = 'pm' if family.startswith('pm') else family
        params = self.mapping_params(family)
        if family == 'pm' and name.rstrip('0123456789') != name:
            params.pop('k', None)

        try:
            scheme = Scheme.from_name(name, **params)
        except Exception as e:
            raise ValueError(str(e)) from e

        return Scheme(
            mapping=scheme.mapping,
            lop=scheme.lop,
            ideal=scheme.ideal,
            strict=self.strict,
            tie_tol=self.tie_tol,
            params=scheme.with_epsilon(self.epsilon).params
        )

    def schemes(self) -> List[Scheme]:
        """The main scheme followed by any comparison schemes."""
        return [self.build_scheme()] + [self.build_scheme(name) for name in self.compare]
