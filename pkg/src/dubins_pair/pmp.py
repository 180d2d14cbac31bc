"""Pontryagin conditions for the vehicle pair with the normal multiplier p0 = -1.

The Hamiltonian is ``H = <p, f(x, u)> - L(x, u)``; optimal controls maximize it,
costates obey ``p' = -dH/dx``.  The closed-loop extremal field is built by
substituting :func:`optimal_control` into :func:`dynamics_rhs` and
:func:`adjoint_rhs`, never written out by hand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K
from .model import ControlPair, PairState, Weights, as_vector, check_separation


@dataclass(frozen=True)
class Costate:
    p1: float = 0.0
    p2: float = 0.0
    p3: float = 0.0
    p4: float = 0.0
    p5: float = 0.0
    p6: float = 0.0

    def to_array(self) -> np.ndarray:
        return np.array([self.p1, self.p2, self.p3, self.p4, self.p5, self.p6], dtype=float)

    @classmethod
    def from_array(cls, arr) -> Costate:
        a = np.asarray(arr, dtype=float).reshape(6)
        return cls(*(float(v) for v in a))

    def swapped(self) -> Costate:
        return Costate(self.p4, self.p5, self.p6, self.p1, self.p2, self.p3)


@dataclass(frozen=True)
class ExtendedState:
    state: PairState
    costate: Costate

    def to_array(self) -> np.ndarray:
        return np.concatenate([self.state.to_array(), self.costate.to_array()])

    @classmethod
    def from_array(cls, arr) -> ExtendedState:
        a = np.asarray(arr, dtype=float).reshape(12)
        return cls(PairState.from_array(a[:6]), Costate.from_array(a[6:]))


def hamiltonian(state, costate, control, w: Weights) -> float:
    s = as_vector(state, 6)
    check_separation(s)
    return float(K.hamiltonian(s, as_vector(costate, 6), as_vector(control, 4), *w.astuple()))


def optimal_control(state, costate, w: Weights) -> ControlPair:
    """Unique maximizer of the Hamiltonian over unconstrained controls."""
    out = np.empty(4)
    K.optimal_control(as_vector(state, 6), as_vector(costate, 6), w.delta, out)
    return ControlPair.from_array(out)


def adjoint_rhs(state, costate, control, w: Weights) -> np.ndarray:
    s = as_vector(state, 6)
    check_separation(s)
    out = np.empty(6)
    K.adjoint(s, as_vector(costate, 6), as_vector(control, 4), w.beta, w.alpha, w.rho, out)
    return out


def closed_loop_rhs(ext, w: Weights) -> np.ndarray:
    """12-component extremal field: state derivative stacked over costate derivative."""
    z = as_vector(ext, 12)
    check_separation(z[:6])
    out = np.empty(12)
    K.closed_loop(z, *w.astuple(), out)
    return out


def stationarity_residual(state, costate, control, w: Weights) -> np.ndarray:
    """Partial derivatives of H with respect to (u1, u2, v1, v2)."""
    out = np.empty(4)
    K.stationarity(as_vector(state, 6), as_vector(costate, 6), as_vector(control, 4), w.delta, out)
    return out
