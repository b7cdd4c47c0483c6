"""
Scheme Models - Mapping families and reconstruction scheme selection.

This module contains:
1. MappingFamily / MappingKind - the mapping function g_s(ω) and its parameters
2. SchemeParams - ideal weights and ε of the JS weights
3. Scheme - what the solvers reconstruct with (mapping, LOP adapter, ILW baseline)
"""

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

from app.exceptions import InvalidInputError


class MappingFamily(enum.Enum):
    """Mapping families of the mapped WENO schemes."""
    JS = "js"          # identity, plain WENO-JS
    M = "m"
    PM = "pm"
    IM = "im"
    PPM5 = "ppm5"
    RM260 = "rm260"
    ACM = "acm"


# Order of the critical point ω = d_s of each mapping (None: not applicable)
FLATNESS_ORDER = {
    MappingFamily.JS: None,
    MappingFamily.M: 2,
    MappingFamily.PPM5: 4,
    MappingFamily.RM260: 3,
    MappingFamily.ACM: math.inf,
}


@dataclass(frozen=True)
class MappingKind:
    """
    Tagged choice of mapping family with its parameters.

    Unused parameters are left as None. Defaults follow the recommended
    settings of each family: PM k=6; IM (k, A) = (2, 0.1); ACM A=20, k=2,
    δ=1e-6, CFS_s = d_s/10.

    Attributes:
        family: Mapping family
        k: Exponent (PM, IM) or sigmoid order (ACM)
        A: IM amplitude or ACM sigmoid amplitude
        delta: ACM transition half-width δ_s
        cfs_factor: ACM lower transition point CFS_s = d_s * cfs_factor
        cfs_bar_factor: ACM upper transition point 1 - (1 - d_s) * cfs_bar_factor;
            defaults to cfs_factor
    """
    family: MappingFamily = MappingFamily.JS
    k: Optional[int] = None
    A: Optional[float] = None
    delta: Optional[float] = None
    cfs_factor: Optional[float] = None
    cfs_bar_factor: Optional[float] = None

    def __post_init__(self):
        family = MappingFamily(self.family)
        object.__setattr__(self, 'family', family)

        if family == MappingFamily.PM:
            self._default('k', 6)
            if self.k <= 0 or self.k % 2:
                raise InvalidInputError(f"PM requires an even positive k, got {self.k}")
        elif family == MappingFamily.IM:
            self._default('k', 2)
            self._default('A', 0.1)
            if self.k <= 0 or self.k % 2:
                raise InvalidInputError(f"IM requires k = 2n, got {self.k}")
            if not self.A > 0:
                raise InvalidInputError(f"IM requires A > 0, got {self.A}")
        elif family == MappingFamily.ACM:
            self._default('A', 20.0)
            self._default('k', 2)
            self._default('delta', 1e-6)
            self._default('cfs_factor', 0.1)
            self._default('cfs_bar_factor', self.cfs_factor)
            if not self.A > 0 or not self.delta > 0:
                raise InvalidInputError("ACM requires A > 0 and delta > 0")
            if not 0 < self.cfs_factor < 1 or not 0 < self.cfs_bar_factor < 1:
                raise InvalidInputError("ACM transition factors must lie in (0, 1)")

    def _default(self, name: str, value) -> None:
        if getattr(self, name) is None:
            object.__setattr__(self, name, value)

    # ------------------------------------------------------------------
    # Factories
    # ------------------------------------------------------------------
    @classmethod
    def identity(cls) -> 'MappingKind':
        return cls(MappingFamily.JS)

    @classmethod
    def m(cls) -> 'MappingKind':
        return cls(MappingFamily.M)

    @classmethod
    def pm(cls, k: int = 6) -> 'MappingKind':
        return cls(MappingFamily.PM, k=k)

    @classmethod
    def im(cls, k: int = 2, A: float = 0.1) -> 'MappingKind':
        return cls(MappingFamily.IM, k=k, A=A)

    @classmethod
    def ppm5(cls) -> 'MappingKind':
        return cls(MappingFamily.PPM5)

    @classmethod
    def rm260(cls) -> 'MappingKind':
        return cls(MappingFamily.RM260)

    @classmethod
    def acm(
        cls,
        A: float = 20.0,
        k: int = 2,
        delta: float = 1e-6,
        cfs_factor: float = 0.1,
        cfs_bar_factor: Optional[float] = None
    ) -> 'MappingKind':
        return cls(
            MappingFamily.ACM,
            k=k,
            A=A,
            delta=delta,
            cfs_factor=cfs_factor,
            cfs_bar_factor=cfs_bar_factor
        )

    # ------------------------------------------------------------------
    # Properties
    # ------------------------------------------------------------------
    @property
    def is_identity(self) -> bool:
        return self.family == MappingFamily.JS

    @property
    def flatness_order(self) -> Optional[float]:
        """Number of vanishing derivatives of g_s at ω = d_s."""
        if self.family in (MappingFamily.PM, MappingFamily.IM):
            return self.k
        return FLATNESS_ORDER[self.family]

    @property
    def label(self) -> str:
        if self.family == MappingFamily.JS:
            return "WENO-JS"
        if self.family == MappingFamily.PM:
            return f"WENO-PM{self.k}"
        if self.family == MappingFamily.IM:
            return f"WENO-IM({self.k},{self.A:g})"
        if self.family == MappingFamily.RM260:
            return "WENO-RM(260)"
        return f"WENO-{self.family.name}"

    @property
    def short_name(self) -> str:
        if self.family == MappingFamily.PM:
            return f"pm{self.k}"
        return self.family.value


@dataclass(frozen=True)
class SchemeParams:
    """
    Ideal weights and ε of the JS weights α_s = d_s / (ε + β_s)².
    """
    ideal_weights: Tuple[float, float, float] = (0.1, 0.6, 0.3)
    epsilon: float = 1e-40

    def __post_init__(self):
        d = tuple(float(v) for v in self.ideal_weights)
        if len(d) != 3 or min(d) <= 0 or abs(sum(d) - 1.0) > 1e-12:
            raise InvalidInputError(f"ideal weights must be 3 positive values summing to 1, got {d}")
        if not self.epsilon > 0:
            raise InvalidInputError(f"epsilon must be positive, got {self.epsilon}")
        object.__setattr__(self, 'ideal_weights', d)


@dataclass(frozen=True)
class Scheme:
    """
    Reconstruction scheme handed to the solvers.

    Attributes:
        mapping: Mapping applied to the JS weights (identity = WENO-JS)
        lop: Wrap the mapping in the locally order-preserving adapter
        ideal: Use the ideal linear weights unconditionally (WENO5-ILW)
        strict: Use the literal membership test of the postINDEX set
        tie_tol: Relative tolerance for treating two weights as equal
        params: Ideal weights and ε
    """
    mapping: MappingKind = field(default_factory=MappingKind)
    lop: bool = False
    ideal: bool = False
    strict: bool = False
    tie_tol: float = 1e-14
    params: SchemeParams = field(default_factory=SchemeParams)

    @property
    def label(self) -> str:
        if self.ideal:
            return "WENO5-ILW"
        prefix = "LOP-" if self.lop else ""
        return prefix + self.mapping.label

    @property
    def name(self) -> str:
        if self.ideal:
            return "ilw"
        prefix = "lop-" if self.lop else ""
        return prefix + self.mapping.short_name

    def with_epsilon(self, epsilon: float) -> 'Scheme':
        return replace(self, params=replace(self.params, epsilon=epsilon))

    @classmethod
    def from_name(cls, name: str, **mapping_params) -> 'Scheme':
        """
        Build a scheme from its short name.

        Args:
            name: 'ilw', 'js', 'm', 'pm', 'pm6', 'im', 'ppm5', 'rm260', 'acm',
                optionally prefixed with 'lop-'
            **mapping_params: Overrides forwarded to the mapping factory
                (e.g. k=2, A=0.1 for IM)

        Returns:
            Scheme instance
        """
        key = name.strip().lower()
        if key == 'ilw':
            return cls(ideal=True)

        lop = key.startswith('lop-')
        if lop:
            key = key[len('lop-'):]

        if key.startswith('pm') and key[2:].isdigit():
            mapping_params.setdefault('k', int(key[2:]))
            key = 'pm'

        factories = {
            'js': MappingKind.identity,
            'm': MappingKind.m,
            'pm': MappingKind.pm,
            'im': MappingKind.im,
            'ppm5': MappingKind.ppm5,
            'rm260': MappingKind.rm260,
            'acm': MappingKind.acm,
        }
        if key not in factories:
            raise InvalidInputError(f"unknown scheme '{name}'")

        return cls(mapping=factories[key](**mapping_params), lop=lop)


# Schemes compared throughout the experiments, in table order
COMPARED_SCHEMES = (
    'ilw', 'js',
    'm', 'lop-m',
    'pm6', 'lop-pm6',
    'im', 'lop-im',
    'ppm5', 'lop-ppm5',
    'rm260', 'lop-rm260',
    'acm', 'lop-acm',
)
