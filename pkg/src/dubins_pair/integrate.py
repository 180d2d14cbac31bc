"""Fixed-step RK4 on a uniform grid, with the cost integrated on the same stages.

Controls live on grid nodes.  RK4 half-step stages see a four-node cubic
interpolant of them, and the costate sweep runs backwards over the stored
forward states using cubic Hermite midpoints.  The running cost is summed
over the forward RK4 stages, so each nodal control carries the quadrature
weight given by :attr:`TimeGrid.weights`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels as K
from .errors import NonFiniteStage, SeparationTooSmall
from .model import SEPARATION_GUARD, PairState, Weights, as_vector


@dataclass(frozen=True)
class TimeGrid:
    horizon: float
    steps: int

    def __post_init__(self):
        if not self.horizon > 0:
            raise ValueError("horizon must be positive")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValueError("steps must be an integer >= 2")

    @property
    def h(self) -> float:
        return self.horizon / self.steps

    @property
    def times(self) -> np.ndarray:
        # k/N first so the last node is T exactly
        return self.horizon * (np.arange(self.steps + 1) / self.steps)

    @property
    def weights(self) -> np.ndarray:
        """Weight of each node in the cost quadrature.

        Equal to ``h`` away from the ends, with end corrections
        ``[1/3, 31/24, 5/6, 25/24]·h`` once there are at least seven steps.
        """
        return K.node_weights(self.steps, self.h)


class _Nodal:
    width = 0

    def __init__(self, grid: TimeGrid, nodes):
        arr = np.ascontiguousarray(nodes, dtype=float)
        if arr.shape != (grid.steps + 1, self.width):
            raise ValueError(
                f"{type(self).__name__} needs shape {(grid.steps + 1, self.width)}, got {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError(f"{type(self).__name__} contains non-finite values")
        self.grid = grid
        self.nodes = arr

    def __len__(self):
        return self.nodes.shape[0]

    def at(self, t: float) -> np.ndarray:
        """Piecewise-linear interpolation between nodes, for plotting and probing."""
        times = self.grid.times
        return np.array([np.interp(t, times, col) for col in self.nodes.T])


class ControlTrajectory(_Nodal):
    width = 4


class StateTrajectory(_Nodal):
    width = 6

    @property
    def final(self) -> PairState:
        return PairState.from_array(self.nodes[-1])


class CostateTrajectory(_Nodal):
    width = 6


def rk4_step(rhs: Callable[[float, np.ndarray], np.ndarray], state, t: float, h: float) -> np.ndarray:
    """One classical Runge-Kutta step of ``x' = rhs(t, x)``."""
    x = np.asarray(state, dtype=float)
    k1 = _finite(rhs(t, x))
    k2 = _finite(rhs(t + h / 2, x + h * k1 / 2))
    k3 = _finite(rhs(t + h / 2, x + h * k2 / 2))
    k4 = _finite(rhs(t + h, x + h * k3))
    return x + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)


def _finite(v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if not np.all(np.isfinite(v)):
        raise NonFiniteStage(f"non-finite RK4 stage value {v}")
    return v


def _check_grid(grid: TimeGrid, *trajs):
    for tr in trajs:
        if tr.grid != grid:
            raise ValueError("trajectory grid does not match the integration grid")


def _raise_guard(X: np.ndarray, step: int):
    raise SeparationTooSmall(float(K.separation_sq(X[step])), SEPARATION_GUARD, step)


def integrate_forward(initial, u: ControlTrajectory, grid: TimeGrid) -> StateTrajectory:
    _check_grid(grid, u)
    X, fail = K.forward(as_vector(initial, 6), u.nodes, grid.h)
    if fail >= 0:
        _raise_guard(X, fail)
    return StateTrajectory(grid, X)


def integrate_backward(
    terminal, states: StateTrajectory, u: ControlTrajectory, grid: TimeGrid, w: Weights
) -> CostateTrajectory:
    _check_grid(grid, states, u)
    P, fail = K.backward(as_vector(terminal, 6), states.nodes, u.nodes, grid.h, w.beta, w.alpha, w.rho)
    if fail >= 0:
        _raise_guard(states.nodes, fail)
    return CostateTrajectory(grid, P)


def integrate_extremal(start, grid: TimeGrid, w: Weights) -> tuple[StateTrajectory, CostateTrajectory]:
    z0 = as_vector(start, 12)
    Z, fail = K.extremal(z0, grid.steps, grid.h, *w.astuple())
    if fail >= 0:
        d2 = float(K.separation_sq(Z[fail])) if fail == 0 else float("nan")
        raise SeparationTooSmall(d2, SEPARATION_GUARD, fail)
    return StateTrajectory(grid, Z[:, :6]), CostateTrajectory(grid, Z[:, 6:])


def extremal_controls(states: StateTrajectory, costates: CostateTrajectory, w: Weights) -> ControlTrajectory:
    """Controls induced at each node of an extremal by the stationarity conditions."""
    return ControlTrajectory(states.grid, K.nodal_optimal_control(states.nodes, costates.nodes, w.delta))


def cost_parts(states: StateTrajectory, u: ControlTrajectory, w: Weights) -> np.ndarray:
    """Integrated cost split into (vehicle 1, vehicle 2, repulsion)."""
    _check_grid(states.grid, u)
    steps, fail = K.stage_cost_steps(states.nodes, u.nodes, states.grid.h, *w.astuple())
    if fail >= 0:
        _raise_guard(states.nodes, fail)
    return np.array([math.fsum(col) for col in steps.T])


def total_cost(states: StateTrajectory, u: ControlTrajectory, w: Weights) -> float:
    _check_grid(states.grid, u)
    steps, fail = K.stage_cost_steps(states.nodes, u.nodes, states.grid.h, *w.astuple())
    if fail >= 0:
        _raise_guard(states.nodes, fail)
    return math.fsum(steps.ravel())
