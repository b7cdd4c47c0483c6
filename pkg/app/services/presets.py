"""
Registry of named experiments.

Every full preset hard-codes the grid, CFL rule and times of one published
table or figure; its `-desk` sibling runs the same experiment on smaller
grids or shorter times so that it finishes on a workstation in minutes.
"""

from dataclasses import dataclass
from typing import Dict, List

from app.exceptions import ConfigParseError
from app.models.cfl import CflRule
from app.models.problem import ProblemId
from app.models.run_config import OutputKind, RunConfig
from app.models.scheme import COMPARED_SCHEMES

DESK_SUFFIX = '-desk'

# Everything except the ILW baseline, which error tables add themselves
MAPPED_SCHEMES = [name for name in COMPARED_SCHEMES if name not in ('ilw', 'js')]
TRACE_SCHEMES = ['lop-m', 'rm260', 'lop-rm260']


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    config: RunConfig
    is_desk: bool = False


PRESETS: Dict[str, Preset] = {}


def _register(name: str, description: str, desk: dict, **fields) -> None:
    """Register a full preset and its desk variant (fields overridden by `desk`)."""
    PRESETS[name] = Preset(name, description, RunConfig(name=name, **fields))
    desk_name = desk.pop('name', name + DESK_SUFFIX)
    desk_fields = {**fields, **desk}
    PRESETS[desk_name] = Preset(
        desk_name, description + " (desk scale)", RunConfig(name=desk_name, **desk_fields), is_desk=True
    )


_register(
    'accuracy2d-1', "2D accuracy test 1: density wave, L1/Linf errors and orders",
    desk={'n': [40, 60]},
    problem=ProblemId.DENSITY_WAVE_1, scheme='js', compare=MAPPED_SCHEMES,
    n=[40, 60, 80, 100], cfl=CflRule.mesh_power(), t_final=2.0,
    outputs=[OutputKind.ERROR_TABLE], ilw_baseline=True,
)

_register(
    'accuracy2d-2', "2D accuracy test 2: density wave with critical points",
    desk={'n': [40, 60, 80]},
    problem=ProblemId.DENSITY_WAVE_2, scheme='js', compare=MAPPED_SCHEMES,
    n=[40, 60, 80, 100], cfl=CflRule.mesh_power(), t_final=2.0,
    outputs=[OutputKind.ERROR_TABLE], ilw_baseline=True,
)

_register(
    'longrun-n300', "Long-run high-order critical points, errors and increased errors",
    desk={'t_outputs': [15.0, 60.0], 't_final': 60.0},
    problem=ProblemId.HIGH_ORDER_CP, scheme='js', compare=MAPPED_SCHEMES,
    n=[300], cfl=CflRule.mesh_power(), t_final=1200.0,
    t_outputs=[15.0, 60.0, 150.0, 300.0, 600.0, 900.0, 1200.0],
    outputs=[OutputKind.ERROR_TABLE], ilw_baseline=True,
)

_register(
    'longrun-n300-t15', "Long-run high-order critical points, row block at t=15",
    desk={'compare': ['m', 'lop-m']},
    problem=ProblemId.HIGH_ORDER_CP, scheme='js', compare=MAPPED_SCHEMES,
    n=[300], cfl=CflRule.mesh_power(), t_final=15.0,
    outputs=[OutputKind.ERROR_TABLE], ilw_baseline=True,
)

_register(
    'step-t2000', "Step problem: errors and orders after long time",
    desk={'n': [200, 400], 't_final': 20.0},
    problem=ProblemId.STEP, scheme='js', compare=MAPPED_SCHEMES,
    n=[200, 400, 800], cfl=CflRule.constant(0.1), t_final=2000.0,
    outputs=[OutputKind.ERROR_TABLE, OutputKind.SUMMARY], ilw_baseline=True,
)

_register(
    'step-n1600-t200', "Step problem solutions and overshoots",
    desk={'name': 'step-n400-t50', 'n': [400], 't_final': 50.0},
    problem=ProblemId.STEP, scheme='js', compare=MAPPED_SCHEMES,
    n=[1600], cfl=CflRule.constant(0.1), t_final=200.0,
    outputs=[OutputKind.FIELD, OutputKind.SUMMARY],
)

_register(
    'step-n3200-t200', "Step problem solutions and overshoots on the finer mesh",
    desk={'n': [800], 't_final': 50.0},
    problem=ProblemId.STEP, scheme='js', compare=MAPPED_SCHEMES,
    n=[3200], cfl=CflRule.constant(0.1), t_final=200.0,
    outputs=[OutputKind.FIELD, OutputKind.SUMMARY],
)

_register(
    'shu-osher', "Shu-Osher shock/entropy wave density profiles",
    desk={'reference_n': 2000},
    problem=ProblemId.SHU_OSHER, scheme='js', compare=MAPPED_SCHEMES,
    n=[300], cfl=CflRule.constant(0.1), t_final=1.8, reference_n=10000,
    outputs=[OutputKind.FIELD, OutputKind.ERROR_TABLE],
)

_register(
    'titarev-toro', "Titarev-Toro high-frequency entropy wave density profiles",
    desk={'n': [500], 'reference_n': 2000},
    problem=ProblemId.TITAREV_TORO, scheme='js', compare=MAPPED_SCHEMES,
    n=[1500], cfl=CflRule.constant(0.4), t_final=5.0, reference_n=10000,
    outputs=[OutputKind.FIELD, OutputKind.ERROR_TABLE],
)

_register(
    'shock-vortex-t035', "Shock-vortex interaction density slices at t=0.35",
    desk={'n': [200]},
    problem=ProblemId.SHOCK_VORTEX, scheme='js', compare=MAPPED_SCHEMES,
    n=[800], cfl=CflRule.constant(0.5), t_final=0.35,
    outputs=[OutputKind.SLICE, OutputKind.SUMMARY], slice_axis='x', slice_at=[0.65, 0.75],
)

_register(
    'shock-vortex-t06', "Shock-vortex interaction density slices at t=0.6",
    desk={'n': [200]},
    problem=ProblemId.SHOCK_VORTEX, scheme='js', compare=MAPPED_SCHEMES,
    n=[800], cfl=CflRule.constant(0.5), t_final=0.6,
    outputs=[OutputKind.SLICE, OutputKind.SUMMARY], slice_axis='x', slice_at=[0.25, 0.3],
)

_register(
    'sine-trace', "Mapping traces for the smooth sine wave",
    desk={'n': [40]},
    problem=ProblemId.SINE_1D, scheme='m', compare=TRACE_SCHEMES,
    n=[80], cfl=CflRule.mesh_power(), t_final=2.0,
    t_outputs=[0.0, 0.5, 1.0, 1.5, 2.0],
    outputs=[OutputKind.TRACE],
)

_register(
    'slp-trace', "Mapping traces for the SLP composite profile",
    desk={'n': [200]},
    problem=ProblemId.SLP, scheme='m', compare=TRACE_SCHEMES,
    n=[800], cfl=CflRule.constant(0.1), t_final=2.0,
    t_outputs=[0.0, 1.0, 2.0],
    outputs=[OutputKind.TRACE, OutputKind.FIELD],
)


def get_preset(name: str) -> Preset:
    """
    Look up a preset by name.

    Raises:
        ConfigParseError: If no preset has that name
    """
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigParseError(f"unknown preset {name!r}; run `weno presets` for the list") from None


def list_presets(desk: bool = True) -> List[Preset]:
    return [preset for preset in PRESETS.values() if desk or not preset.is_desk]
