"""
Text format for run configurations.

One `key = value` pair per line; blank lines and `#` comments are ignored.
Lists (n, t_outputs, outputs, compare, slice_at) are comma separated.
`cfl` is either a number or `dx^2/3` / `dx^<p>` for a mesh-power rule.

    problem = step
    scheme = m
    lop = true
    n = 200, 400
    cfl = 0.1
    t_final = 2.0
"""

import enum
from typing import Any, Callable, Dict, List

from pydantic import ValidationError

from app.exceptions import ConfigParseError, WenoError
from app.models.cfl import CflRule
from app.models.grid import BoundaryKind
from app.models.problem import ProblemId
from app.models.run_config import OutputKind, RunConfig

_TRUE = ('true', 'yes', 'on', '1')
_FALSE = ('false', 'no', 'off', '0')


def _parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_cfl(text: str) -> CflRule:
    compact = text.replace(' ', '').lower()
    if compact.startswith('dx^'):
        exponent = compact[len('dx^'):]
        if '/' in exponent:
            numerator, denominator = exponent.split('/', 1)
            return CflRule.mesh_power(float(numerator) / float(denominator))
        return CflRule.mesh_power(float(exponent))
    return CflRule.constant(float(compact))


def _split(text: str) -> List[str]:
    return [item.strip() for item in text.split(',') if item.strip()]


def _list_of(parse: Callable[[str], Any]) -> Callable[[str], list]:
    return lambda text: [parse(item) for item in _split(text)]


PARSERS: Dict[str, Callable[[str], Any]] = {
    'name': str,
    'problem': ProblemId,
    'scheme': str.lower,
    'lop': _parse_bool,
    'strict': _parse_bool,
    'pm_k': int,
    'im_k': int,
    'im_a': float,
    'acm_a': float,
    'acm_k': int,
    'acm_delta': float,
    'acm_cfs': float,
    'acm_cfs_bar': float,
    'n': _list_of(int),
    'cfl': _parse_cfl,
    't_final': float,
    't_outputs': _list_of(float),
    'boundary': BoundaryKind,
    'outputs': _list_of(OutputKind),
    'compare': _list_of(str.lower),
    'ilw_baseline': _parse_bool,
    'reference_n': int,
    'slice_axis': str.lower,
    'slice_at': _list_of(float),
    'epsilon': float,
    'tie_tol': float,
    'full_precision': _parse_bool,
}


def parse_config(text: str) -> RunConfig:
    """
    Parse and validate a run configuration.

    `problem` is the only required key; grids, CFL rule, times and boundary
    default to the problem's catalogue entry.

    Args:
        text: Configuration text

    Returns:
        Validated RunConfig

    Raises:
        ConfigParseError: On an unknown or repeated key, a malformed value or
            a violated invariant; `line` points at the offending pair when
            it can be attributed to one
    """
    values: Dict[str, Any] = {}
    lines: Dict[str, int] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigParseError(f"expected 'key = value', got {line!r}", number)

        key, value = (part.strip() for part in line.split('=', 1))
        key = key.lower()
        if key not in PARSERS:
            raise ConfigParseError(f"unknown key {key!r}", number)
        if key in values:
            raise ConfigParseError(f"duplicate key {key!r}", number)
        if not value:
            raise ConfigParseError(f"missing value for {key!r}", number)

        try:
            values[key] = PARSERS[key](value)
        except (ValueError, WenoError) as e:
            raise ConfigParseError(f"invalid value for {key!r}: {str(e)}", number) from e
        lines[key] = number

    try:
        return RunConfig(**values)
    except ValidationError as e:
        errors = e.errors()
        # prefer an error that can be pinned to a line of the input
        error = next((item for item in errors if item.get('loc') and item['loc'][0] in lines), errors[0])
        location = error.get('loc') or ()
        key = location[0] if location else None
        message = error.get('msg', str(e))
        if key is not None:
            message = f"{key}: {message}"
        raise ConfigParseError(message, lines.get(key)) from e


def _render_value(value: Any) -> str:
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, CflRule):
        return value.describe()
    if isinstance(value, list):
        return ', '.join(_render_value(item) for item in value)
    return str(value)


def render_config(config: RunConfig) -> str:
    """
    Render a RunConfig in the text format; parse_config reads it back unchanged.

    Unset optional fields and empty lists are omitted.
    """
    lines = []
    for key in RunConfig.model_fields:
        value = getattr(config, key)
        if value is None or value == []:
            continue
        lines.append(f"{key} = {_render_value(value)}")
    return '\n'.join(lines) + '\n'


def load_config(path: str) -> RunConfig:
    """Read and parse a configuration file."""
    try:
        with open(path, encoding='utf-8') as handle:
            text = handle.read()
    except OSError as e:
        raise ConfigParseError(f"cannot read {path}: {e}") from e
    return parse_config(text)
