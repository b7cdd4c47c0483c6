"""
Error hierarchy shared by the kernels, solvers and the experiment harness.
"""

from typing import Optional


class WenoError(Exception):
    """Root of every error raised by the package."""


class InvalidInputError(WenoError, ValueError):
    """Non-finite kernel input, shape mismatch or out-of-range index."""


class ContractViolationError(WenoError, ValueError):
    """A caller broke a documented precondition (e.g. unnormalized weights)."""


class DomainError(WenoError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class DivergenceError(WenoError, ArithmeticError):
    """
    The solution left the admissible set or produced NaN.

    Attributes:
        stage: Runge-Kutta stage (1-3) where the failure was detected
        cell: Flat index of the first offending cell or face
        time: Simulation time of the step being taken
    """

    def __init__(
        self,
        message: str,
        stage: Optional[int] = None,
        cell: Optional[int] = None,
        time: Optional[float] = None
    ):
        self.reason = message
        self.stage = stage
        self.cell = cell
        self.time = time

        details = []
        if stage is not None:
            details.append(f"stage={stage}")
        if cell is not None:
            details.append(f"cell={cell}")
        if time is not None:
            details.append(f"time={time:.6g}")

        if details:
            message = f"{message} ({', '.join(details)})"
        super().__init__(message)


class ConfigParseError(WenoError, ValueError):
    """Run configuration text could not be parsed or validated."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class OutputError(WenoError, OSError):
    """Writing a CSV artifact, trace or cache file failed."""
