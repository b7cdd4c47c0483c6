"""
CFL number rules.
"""

import enum
from dataclasses import dataclass
from typing import Optional

from app.exceptions import InvalidInputError


class CflKind(enum.Enum):
    CONSTANT = "constant"
    MESH_POWER = "mesh_power"


@dataclass(frozen=True)
class CflRule:
    """
    Either a constant CFL number or Δx^exponent.

    The mesh-power form is used for accuracy tests so that the temporal
    error of the third order integrator stays below the fifth order
    spatial error.
    """
    kind: CflKind = CflKind.CONSTANT
    value: Optional[float] = 0.1
    exponent: Optional[float] = None

    def __post_init__(self):
        if self.kind == CflKind.CONSTANT:
            if self.value is None or not 0 < self.value <= 1:
                raise InvalidInputError(f"constant CFL must lie in (0, 1], got {self.value}")
        elif self.exponent is None or not self.exponent > 0:
            raise InvalidInputError(f"mesh-power CFL needs a positive exponent, got {self.exponent}")

    @classmethod
    def constant(cls, value: float) -> 'CflRule':
        return cls(CflKind.CONSTANT, value=value)

    @classmethod
    def mesh_power(cls, exponent: float = 2.0 / 3.0) -> 'CflRule':
        return cls(CflKind.MESH_POWER, value=None, exponent=exponent)

    def number(self, dx: float) -> float:
        """CFL number for a mesh of spacing dx."""
        if self.kind == CflKind.CONSTANT:
            return self.value
        number = dx ** self.exponent
        if not 0 < number <= 1:
            raise InvalidInputError(f"dx^{self.exponent:g} = {number:g} is not a CFL number in (0, 1]")
        return number

    def describe(self) -> str:
        if self.kind == CflKind.CONSTANT:
            return repr(float(self.value))
        if abs(self.exponent - 2.0 / 3.0) < 1e-12:
            return "dx^2/3"
        return f"dx^{float(self.exponent)!r}"
