"""
Third-order SSP Runge-Kutta stepping and CFL time steps.
"""

from typing import Callable, Optional, Sequence

import numpy as np

from app.exceptions import DivergenceError, InvalidInputError
from app.models.cfl import CflRule

Rhs = Callable[[np.ndarray], np.ndarray]


def _check_stage(state: np.ndarray, stage: int, time: Optional[float]) -> np.ndarray:
    if not np.all(np.isfinite(state)):
        bad = np.flatnonzero(~np.isfinite(state).reshape(-1))[0]
        cell = int(bad % int(np.prod(state.shape[1:]))) if state.ndim > 1 else int(bad)
        raise DivergenceError("non-finite value in Runge-Kutta stage", stage=stage, cell=cell, time=time)
    return state


def _evaluate(rhs: Rhs, state: np.ndarray, stage: int, time: Optional[float]) -> np.ndarray:
    try:
        return rhs(state)
    except DivergenceError as e:
        if e.stage is not None:
            raise
        raise DivergenceError(e.reason, stage=stage, cell=e.cell, time=time) from e


def ssp_rk3_step(
    state: np.ndarray,
    dt: float,
    rhs: Rhs,
    time: Optional[float] = None
) -> np.ndarray:
    """
    Advance one step of the Shu-Osher SSP-RK3 scheme.

    Args:
        state: Conserved variables (any shape)
        dt: Time step, positive
        rhs: Semi-discrete operator L(U); must not modify its argument
        time: Current time, only used in error diagnostics

    Returns:
        New state

    Raises:
        DivergenceError: If a stage produces NaN or Inf (carries the stage)
    """
    if not dt > 0:
        raise InvalidInputError(f"time step must be positive, got {dt}")

    u1 = _check_stage(state + dt * _evaluate(rhs, state, 1, time), 1, time)
    u2 = _check_stage(0.75 * state + 0.25 * u1 + 0.25 * dt * _evaluate(rhs, u1, 2, time), 2, time)
    return _check_stage(state / 3.0 + 2.0 / 3.0 * u2 + 2.0 / 3.0 * dt * _evaluate(rhs, u2, 3, time), 3, time)


def dt_from_cfl(rule: CflRule, spacing: Sequence[float], speeds: Sequence[float]) -> float:
    """
    Time step from a CFL rule.

    1D: c Δx / α; 2D: c / Σ_i (α_i / Δx_i). The CFL number of a mesh-power
    rule is evaluated on the first spacing.

    Args:
        rule: CFL rule
        spacing: Mesh spacing per axis
        speeds: Maximum wave speed per axis

    Returns:
        Time step
    """
    spacing = [float(h) for h in np.atleast_1d(spacing)]
    speeds = [float(a) for a in np.atleast_1d(speeds)]

    if len(spacing) != len(speeds):
        raise InvalidInputError("need one wave speed per mesh axis")
    if any(not a > 0 for a in speeds) or any(not h > 0 for h in spacing):
        raise InvalidInputError(f"wave speeds and spacings must be positive, got {speeds}, {spacing}")

    c = rule.number(spacing[0])
    return c / sum(a / h for a, h in zip(speeds, spacing))


def advance(
    state: np.ndarray,
    t_start: float,
    t_end: float,
    rhs: Rhs,
    time_step: Callable[[np.ndarray], float],
    on_step: Optional[Callable[[int, float, float], None]] = None
):
    """
    Integrate from t_start to exactly t_end.

    The last step is shortened to land on t_end.

    Args:
        state: Initial state
        t_start, t_end: Time interval
        rhs: Semi-discrete operator
        time_step: Returns the CFL time step for the current state
        on_step: Called as on_step(step, time, dt) after every step

    Returns:
        (state, steps)
    """
    t = t_start
    steps = 0
    while t < t_end:
        dt = time_step(state)
        last = t + dt >= t_end - 1e-12 * max(1.0, abs(t_end))
        if last:
            dt = t_end - t
        state = ssp_rk3_step(state, dt, rhs, t)
        steps += 1
        t = t_end if last else t + dt
        if on_step is not None:
            on_step(steps, t, dt)
    return state, steps
