"""
Problem catalogue metadata.

The formulas live in app.services.problems; this module only records what
each test binds: domain, boundary, CFL convention, final time and γ.
"""

import enum
from dataclasses import dataclass
from typing import Dict, Tuple

from app.models.cfl import CflRule
from app.models.grid import BoundaryKind


class Equation(enum.Enum):
    ADVECTION = "advection"
    EULER = "euler"


class ProblemId(enum.Enum):
    SINE_1D = "sine"
    HIGH_ORDER_CP = "high-order-cp"
    SLP = "slp"
    STEP = "step"
    SHU_OSHER = "shu-osher"
    TITAREV_TORO = "titarev-toro"
    DENSITY_WAVE_1 = "density-wave-1"
    DENSITY_WAVE_2 = "density-wave-2"
    SHOCK_VORTEX = "shock-vortex"


@dataclass(frozen=True)
class ProblemSpec:
    """
    Static description of a test problem.

    Attributes:
        problem_id: Catalogue key
        equation: Advection or Euler
        bounds: (lo, hi) per axis
        boundary: Boundary kind used by the experiments
        cfl: Default CFL rule
        t_final: Default output time
        default_n: Default cells per axis
        gamma: Ratio of specific heats (Euler only)
        has_exact: Whether a closed-form solution exists
        description: One line for `weno presets` and logs
    """
    problem_id: ProblemId
    equation: Equation
    bounds: Tuple[Tuple[float, float], ...]
    boundary: BoundaryKind
    cfl: CflRule
    t_final: float
    default_n: int
    gamma: float = 1.4
    has_exact: bool = False
    description: str = ""

    @property
    def dimension(self) -> int:
        return len(self.bounds)

    @property
    def n_variables(self) -> int:
        if self.equation == Equation.ADVECTION:
            return 1
        return 2 + self.dimension

    def contains(self, position: Tuple[float, ...]) -> bool:
        return all(lo <= p <= hi for p, (lo, hi) in zip(position, self.bounds))


PROBLEM_SPECS: Dict[ProblemId, ProblemSpec] = {
    ProblemId.SINE_1D: ProblemSpec(
        ProblemId.SINE_1D, Equation.ADVECTION, ((-1.0, 1.0),),
        BoundaryKind.PERIODIC, CflRule.mesh_power(), 2.0, 80, has_exact=True,
        description="u_t + u_x = 0, u0 = sin(pi x)"
    ),
    ProblemId.HIGH_ORDER_CP: ProblemSpec(
        ProblemId.HIGH_ORDER_CP, Equation.ADVECTION, ((7.5, 10.5),),
        BoundaryKind.PERIODIC, CflRule.mesh_power(), 15.0, 300, has_exact=True,
        description="u0 = exp(-(x-9)^5 cos^9(pi (x-9))), high-order critical points"
    ),
    ProblemId.SLP: ProblemSpec(
        ProblemId.SLP, Equation.ADVECTION, ((-1.0, 1.0),),
        BoundaryKind.PERIODIC, CflRule.constant(0.1), 2.0, 800, has_exact=True,
        description="Gaussian, square wave, sharp triangle and semi-ellipse"
    ),
    ProblemId.STEP: ProblemSpec(
        ProblemId.STEP, Equation.ADVECTION, ((-1.0, 1.0),),
        BoundaryKind.PERIODIC, CflRule.constant(0.1), 2.0, 200, has_exact=True,
        description="two constant states separated by jumps"
    ),
    ProblemId.SHU_OSHER: ProblemSpec(
        ProblemId.SHU_OSHER, Equation.EULER, ((-5.0, 5.0),),
        BoundaryKind.TRANSMISSIVE, CflRule.constant(0.1), 1.8, 300,
        description="Mach 3 shock interacting with an entropy wave"
    ),
    ProblemId.TITAREV_TORO: ProblemSpec(
        ProblemId.TITAREV_TORO, Equation.EULER, ((-5.0, 5.0),),
        BoundaryKind.TRANSMISSIVE, CflRule.constant(0.4), 5.0, 1500,
        description="shock interacting with a high-frequency entropy wave"
    ),
    ProblemId.DENSITY_WAVE_1: ProblemSpec(
        ProblemId.DENSITY_WAVE_1, Equation.EULER, ((-1.0, 1.0), (-1.0, 1.0)),
        BoundaryKind.PERIODIC, CflRule.mesh_power(), 2.0, 40, has_exact=True,
        description="rho0 = 1 + 0.2 sin(pi (x + y))"
    ),
    ProblemId.DENSITY_WAVE_2: ProblemSpec(
        ProblemId.DENSITY_WAVE_2, Equation.EULER, ((-1.0, 1.0), (-1.0, 1.0)),
        BoundaryKind.PERIODIC, CflRule.mesh_power(), 2.0, 40, has_exact=True,
        description="rho0 = 1 + 0.2 sin(pi (x + y) - sin(pi (x + y)) / pi), critical points"
    ),
    ProblemId.SHOCK_VORTEX: ProblemSpec(
        ProblemId.SHOCK_VORTEX, Equation.EULER, ((0.0, 1.0), (0.0, 1.0)),
        BoundaryKind.TRANSMISSIVE, CflRule.constant(0.5), 0.35, 200,
        description="stationary Mach 1.1 shock hit by a vortex"
    ),
}


def get_problem_spec(problem_id) -> ProblemSpec:
    return PROBLEM_SPECS[ProblemId(problem_id)]

