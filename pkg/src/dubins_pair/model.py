"""Vehicle pair kinematics and the running cost.

Each vehicle follows ``pos1' = speed*sin(heading)``, ``pos2' = speed*cos(heading)``,
``heading' = turn_rate``.  Note the unusual axis convention: the *first*
coordinate advances with the sine of the heading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import SeparationTooSmall

SEPARATION_GUARD = K.SEPARATION_GUARD
P0 = K.P0


@dataclass(frozen=True)
class VehicleState:
    pos1: float
    pos2: float
    heading: float  # radians, unwrapped

    def to_array(self) -> np.ndarray:
        return np.array([self.pos1, self.pos2, self.heading], dtype=float)

    @classmethod
    def from_array(cls, arr) -> VehicleState:
        a = np.asarray(arr, dtype=float).reshape(3)
        return cls(float(a[0]), float(a[1]), float(a[2]))


@dataclass(frozen=True)
class PairState:
    a: VehicleState
    b: VehicleState

    def to_array(self) -> np.ndarray:
        return np.concatenate([self.a.to_array(), self.b.to_array()])

    @classmethod
    def from_array(cls, arr) -> PairState:
        a = np.asarray(arr, dtype=float).reshape(6)
        return cls(VehicleState.from_array(a[:3]), VehicleState.from_array(a[3:]))

    def swapped(self) -> PairState:
        return PairState(self.b, self.a)


@dataclass(frozen=True)
class ControlPair:
    u1: float
    u2: float
    v1: float
    v2: float

    def to_array(self) -> np.ndarray:
        return np.array([self.u1, self.u2, self.v1, self.v2], dtype=float)

    @classmethod
    def from_array(cls, arr) -> ControlPair:
        a = np.asarray(arr, dtype=float).reshape(4)
        return cls(*(float(v) for v in a))

    def swapped(self) -> ControlPair:
        return ControlPair(self.v1, self.v2, self.u1, self.u2)


@dataclass(frozen=True)
class Weights:
    """Cost coefficients.  ``p0`` is fixed at -1 and is not a constructor argument."""

    delta: float = 1.0
    beta: float = 0.05
    alpha: float = 0.05
    rho: float = 1.0
    p0: float = field(default=P0, init=False)

    def violations(self) -> list[str]:
        out = []
        for name in ("delta", "beta", "alpha", "rho"):
            if not math.isfinite(getattr(self, name)):
                out.append(f"{name} must be finite")
        if not self.delta > 0:
            out.append("delta must be positive")
        for name in ("beta", "alpha", "rho"):
            if not getattr(self, name) >= 0:
                out.append(f"{name} must be non-negative")
        return out

    def swapped(self) -> Weights:
        return Weights(self.delta, self.alpha, self.beta, self.rho)

    def astuple(self) -> tuple[float, float, float, float]:
        return (self.delta, self.beta, self.alpha, self.rho)


@dataclass(frozen=True)
class BoundaryConditions:
    initial: PairState
    final: PairState
    horizon: float

    def swapped(self) -> BoundaryConditions:
        return BoundaryConditions(self.initial.swapped(), self.final.swapped(), self.horizon)


def as_vector(value, size: int) -> np.ndarray:
    """Accept a domain object (anything with ``to_array``) or a plain sequence."""
    arr = value.to_array() if hasattr(value, "to_array") else np.asarray(value, dtype=float)
    arr = np.ascontiguousarray(arr, dtype=float)
    if arr.shape != (size,):
        raise ValueError(f"expected {size} components, got shape {arr.shape}")
    return arr


def check_separation(s: np.ndarray) -> float:
    d2 = float(K.separation_sq(s))
    if not d2 >= SEPARATION_GUARD:
        raise SeparationTooSmall(d2, SEPARATION_GUARD)
    return d2


def dynamics_rhs(state, control) -> np.ndarray:
    """Time derivative of the six state components under the given controls."""
    out = np.empty(6)
    K.dynamics(as_vector(state, 6), as_vector(control, 4), out)
    return out


def separation_sq(state) -> float:
    return float(K.separation_sq(as_vector(state, 6)))


def running_cost(state, control, w: Weights) -> float:
    """Integrand of the cost functional, including the leading one half."""
    s = as_vector(state, 6)
    check_separation(s)
    return float(K.running_cost(s, as_vector(control, 4), *w.astuple()))


def validate_scenario(bc: BoundaryConditions, w: Weights) -> list[str]:
    """Return every violated invariant; an empty list means the scenario is usable."""
    out = list(w.violations())
    if not (math.isfinite(bc.horizon) and bc.horizon > 0):
        out.append("horizon must be positive")
    for label, st in (("initial", bc.initial), ("final", bc.final)):
        arr = st.to_array()
        if not np.all(np.isfinite(arr)):
            out.append(f"{label} state must be finite")
        elif K.separation_sq(arr) <= SEPARATION_GUARD:
            out.append(f"{label} endpoint separation below guard")
    return out
