"""Two-point boundary value solvers for the vehicle pair.

Two routes reach the same extremal:

* :func:`fbsm_solve` descends the cost in control space.  States are swept
  forward, costates backward, and the control gradient is read off the
  stationarity residual.  The fixed endpoints are enforced by a quadratic
  terminal penalty whose target is shifted between stages (method of
  multipliers), with the weight growing geometrically when the endpoint
  error stops shrinking.
* :func:`shooting_solve` treats the six initial costates as unknowns and
  drives the terminal state error of the closed-loop extremal to zero with
  damped Gauss-Newton.

The descent works on one vehicle block at a time: each vehicle keeps its own
quasi-Newton memory, step length and penalty stage.  The two blocks only
interact through the repulsion term, so with ``rho = 0`` the pair iterates are
bit-for-bit those of two separate single-vehicle runs.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K
from .errors import ScenarioInvalid, SeparationTooSmall, SingularJacobian
from .integrate import (
    ControlTrajectory,
    CostateTrajectory,
    StateTrajectory,
    TimeGrid,
    extremal_controls,
    integrate_backward,
    integrate_forward,
    total_cost,
)
from .model import SEPARATION_GUARD, BoundaryConditions, PairState, VehicleState, Weights, validate_scenario

METHODS = ("fbsm", "shooting", "both")
LBFGS_MEMORY = 12
MAX_BACKTRACKS = 60
MAX_STAGES = 80
ANGLE_TOLERANCE = 1e-3
FLOOR_RETRIES = 3
FD_JACOBIAN_STEP = 1e-6


@dataclass(frozen=True)
class PenaltySchedule:
    initial: float = 1.0
    growth: float = 10.0
    max: float = 1e6


@dataclass(frozen=True)
class SolveOptions:
    method: str = "fbsm"
    max_iterations: int = 500
    gradient_tolerance: float = 1e-6
    cost_tolerance: float = 1e-8
    armijo_slope: float = 1e-4
    backtrack_factor: float = 0.5
    initial_step: float = 1.0
    penalty: PenaltySchedule = field(default_factory=PenaltySchedule)
    residual_tolerance: float = 1e-6

    def violations(self) -> list[str]:
        out = []
        if self.method not in METHODS:
            out.append(f"method must be one of {', '.join(METHODS)}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            out.append("max_iterations must be a positive integer")
        for name in ("gradient_tolerance", "cost_tolerance", "residual_tolerance", "initial_step"):
            if not getattr(self, name) > 0:
                out.append(f"{name} must be positive")
        for name in ("armijo_slope", "backtrack_factor"):
            if not 0 < getattr(self, name) < 1:
                out.append(f"{name} must lie in (0, 1)")
        pen = self.penalty
        if not pen.initial > 0:
            out.append("penalty.initial must be positive")
        if not pen.growth > 1:
            out.append("penalty.growth must exceed 1")
        if not pen.max >= pen.initial:
            out.append("penalty.max must be at least penalty.initial")
        return out


@dataclass(frozen=True)
class TerminalPenalty:
    """Quadratic pull of the final state towards ``target``.

    ``weight`` is either one number for both vehicles or a ``(vehicle1, vehicle2)`` pair.
    """

    weight: float | tuple[float, float]
    target: PairState

    @property
    def vehicle_weights(self) -> tuple[float, float]:
        if np.ndim(self.weight) == 0:
            return (float(self.weight), float(self.weight))
        wa, wb = self.weight
        return (float(wa), float(wb))


@dataclass(frozen=True)
class SolveReport:
    converged: bool
    iterations: int
    final_cost: float
    terminal_residual: tuple[float, ...]
    max_stationarity: float
    hamiltonian_drift: float
    min_separation: float
    method: str
    terminal_tolerance: float = math.nan

    @property
    def terminal_residual_norm(self) -> float:
        return float(np.max(np.abs(self.terminal_residual)))


@dataclass
class Solution:
    bc: BoundaryConditions
    grid: TimeGrid
    states: StateTrajectory
    costates: CostateTrajectory
    controls: ControlTrajectory
    report: SolveReport
    cost_history: list[tuple[int, float, tuple]] = field(default_factory=list)
    penalty: TerminalPenalty | None = None

    def __iter__(self):
        return iter((self.states, self.costates, self.controls, self.report))


@dataclass(frozen=True)
class Diagnostics:
    hamiltonian_drift: float
    max_stationarity: float
    terminal_residual: tuple[float, ...]
    min_separation: float
    final_cost: float


# ---------------------------------------------------------------------------
# shared pieces
# ---------------------------------------------------------------------------


def _require_valid(bc: BoundaryConditions, w: Weights, opts: SolveOptions | None = None):
    problems = validate_scenario(bc, w)
    if opts is not None:
        problems += opts.violations()
    if problems:
        raise ScenarioInvalid(problems)


def augmented_cost(states: StateTrajectory, u: ControlTrajectory, w: Weights, pen: TerminalPenalty) -> float:
    """Cost functional plus the terminal penalty, headings left unwrapped."""
    miss = states.nodes[-1] - pen.target.to_array()
    wa, wb = pen.vehicle_weights
    return total_cost(states, u, w) + wa / 2 * float(miss[:3] @ miss[:3]) + wb / 2 * float(miss[3:] @ miss[3:])


def initial_controls(bc: BoundaryConditions, grid: TimeGrid) -> ControlTrajectory:
    """Constant controls: straight-line speed and uniform heading change for each vehicle."""
    x0, x1 = bc.initial.to_array(), bc.final.to_array()
    T = bc.horizon
    c = np.array([
        math.hypot(x1[0] - x0[0], x1[1] - x0[1]) / T,
        (x1[2] - x0[2]) / T,
        math.hypot(x1[3] - x0[3], x1[4] - x0[4]) / T,
        (x1[5] - x0[5]) / T,
    ])
    return ControlTrajectory(grid, np.tile(c, (grid.steps + 1, 1)))


def hamiltonian_profile(states: StateTrajectory, costates: CostateTrajectory, u: ControlTrajectory, w: Weights):
    return K.nodal_hamiltonian(states.nodes, costates.nodes, u.nodes, *w.astuple())


def relative_drift(H: np.ndarray) -> float:
    return float(np.max(np.abs(H - H[0])) / (1.0 + abs(H[0])))


def check_suite(solution: Solution, w: Weights) -> Diagnostics:
    """Recompute the certificate quantities of a finished solve (read-only)."""
    X, P, U = solution.states, solution.costates, solution.controls
    H = hamiltonian_profile(X, P, U, w)
    S = K.nodal_stationarity(X.nodes, P.nodes, U.nodes, w.delta)
    miss = X.nodes[-1] - solution.bc.final.to_array()
    return Diagnostics(
        hamiltonian_drift=relative_drift(H),
        max_stationarity=float(np.max(np.abs(S))),
        terminal_residual=tuple(float(v) for v in miss),
        min_separation=math.sqrt(K.min_separation_sq(X.nodes)),
        final_cost=total_cost(X, U, w),
    )


def _report(solution: Solution, w: Weights, converged: bool, iterations: int, method: str, tol: float):
    d = check_suite(solution, w)
    return SolveReport(
        converged=bool(converged),
        iterations=int(iterations),
        final_cost=d.final_cost,
        terminal_residual=d.terminal_residual,
        max_stationarity=d.max_stationarity,
        hamiltonian_drift=d.hamiltonian_drift,
        min_separation=d.min_separation,
        method=method,
        terminal_tolerance=tol,
    )


# ---------------------------------------------------------------------------
# forward-backward sweep descent
# ---------------------------------------------------------------------------


class _Block:
    """Per-vehicle descent state: penalty stage, multiplier and quasi-Newton memory."""

    def __init__(self, index: int, final: np.ndarray, weight: float):
        self.index = index
        self.ucols = slice(2 * index, 2 * index + 2)
        self.xcols = slice(3 * index, 3 * index + 3)
        self.final = final[self.xcols].copy()
        self.weight = weight
        self.multiplier = np.zeros(3)
        self.memory: deque = deque(maxlen=LBFGS_MEMORY)
        self.stage = 0
        self.last_miss = math.inf
        self.done = False
        self.stalled = False
        self.floor_stalls = 0

    @property
    def target(self) -> np.ndarray:
        return self.final - self.multiplier / self.weight

    def terminal_costate(self, xT: np.ndarray) -> np.ndarray:
        # transversality with p0 = -1: p(T) = -d(penalty)/dx(T)
        return -self.weight * (xT[self.xcols] - self.target)

    def penalty(self, xT: np.ndarray) -> float:
        m = xT[self.xcols] - self.target
        return self.weight / 2 * float(m @ m)

    def advance(self, miss: np.ndarray, schedule: PenaltySchedule, tolerance: float):
        norm = float(np.max(np.abs(miss)))
        self.multiplier = self.multiplier + self.weight * miss
        # a miss already inside tolerance needs no stiffer penalty
        if norm > tolerance and norm > 0.25 * self.last_miss and self.weight < schedule.max:
            self.weight = min(self.weight * schedule.growth, schedule.max)
            # curvature pairs describe the old weight
            self.memory.clear()
        self.last_miss = norm
        self.stage += 1
        self.stalled = False


class _Cost:
    """Per-step cost terms of one trajectory plus each block's terminal penalty.

    Near convergence a useful step lowers the cost by less than the rounding
    error of a total near 40, so comparisons difference the terms first.
    """

    def __init__(self, steps: np.ndarray, penalties: np.ndarray):
        self.steps = steps
        self.penalties = penalties

    def own(self, i: int) -> float:
        """Cost seen by block ``i``: its own terms, the shared repulsion and its penalty."""
        return math.fsum(self.steps[:, i]) + math.fsum(self.steps[:, 2]) + self.penalties[i]

    def total(self) -> float:
        return math.fsum([*self.steps.ravel(), *self.penalties])

    def change_own(self, other: _Cost, i: int) -> float:
        d = (other.steps[:, i] - self.steps[:, i]) + (other.steps[:, 2] - self.steps[:, 2])
        return float(np.sum(d)) + (other.penalties[i] - self.penalties[i])

    def change_total(self, other: _Cost) -> float:
        return float(np.sum(other.steps - self.steps)) + float(np.sum(other.penalties - self.penalties))


class _Sweep:
    """Cost and gradient evaluation for one scenario on one grid."""

    def __init__(self, bc: BoundaryConditions, w: Weights, grid: TimeGrid):
        self.x0 = bc.initial.to_array()
        self.w = w
        self.grid = grid
        self.h = grid.h
        self.qw = grid.weights[:, None]

    def states(self, U: np.ndarray):
        X, fail = K.forward(self.x0, U, self.h)
        return None if fail >= 0 else X

    def evaluate(self, X: np.ndarray, U: np.ndarray, blocks) -> _Cost | None:
        steps, fail = K.stage_cost_steps(X, U, self.h, *self.w.astuple())
        if fail >= 0:
            return None
        return _Cost(steps, np.array([b.penalty(X[-1]) for b in blocks]))

    def costates(self, X: np.ndarray, U: np.ndarray, blocks) -> np.ndarray:
        pT = np.concatenate([b.terminal_costate(X[-1]) for b in blocks])
        P, fail = K.backward(pT, X, U, self.h, self.w.beta, self.w.alpha, self.w.rho)
        if fail >= 0:
            raise SeparationTooSmall(float(K.separation_sq(X[fail])), SEPARATION_GUARD, fail)
        return P

    def gradient(self, X, P, U) -> np.ndarray:
        return -K.nodal_stationarity(X, P, U, self.w.delta)

    def dot(self, a: np.ndarray, b: np.ndarray) -> float:
        return float(np.sum(self.qw * a * b))


def _lbfgs_direction(sweep: _Sweep, g: np.ndarray, memory) -> np.ndarray:
    q = g.copy()
    alphas = []
    for s, y, rho in reversed(memory):
        a = rho * sweep.dot(s, q)
        q -= a * y
        alphas.append(a)
    if memory:
        s, y, _ = memory[-1]
        q *= sweep.dot(s, y) / sweep.dot(y, y)
    for (s, y, rho), a in zip(memory, reversed(alphas)):
        b = rho * sweep.dot(y, q)
        q += (a - b) * s
    return -q


def _last_relative_decrease(history) -> float:
    """Relative drop of the penalized cost over the last step; 0 if the stage took no step."""
    if len(history) < 2 or history[-1][2] != history[-2][2]:
        return 0.0
    before, after = history[-2][1], history[-1][1]
    return (before - after) / max(1.0, abs(before))


def fbsm_solve(bc: BoundaryConditions, w: Weights, opts: SolveOptions = SolveOptions(),
               grid: TimeGrid | None = None, guess: ControlTrajectory | None = None) -> Solution:
    """Steepest-descent family solve in control space (forward-backward sweep).

    Each iteration sweeps states forward and costates backward, turns the
    stationarity residual into a control gradient, and takes a quasi-Newton
    step per vehicle with Armijo backtracking on the penalized cost.  Accepted
    penalized costs never increase within one penalty stage.
    """
    _require_valid(bc, w, opts)
    grid = grid or TimeGrid(bc.horizon, 2000)
    if grid.horizon != bc.horizon:
        raise ValueError("grid horizon differs from the boundary conditions")
    sweep = _Sweep(bc, w, grid)
    final = bc.final.to_array()
    blocks = [_Block(i, final, opts.penalty.initial) for i in range(2)]
    U = (guess or initial_controls(bc, grid)).nodes.copy()
    X = sweep.states(U)
    if X is None:
        raise SeparationTooSmall(math.nan, SEPARATION_GUARD)

    c1 = opts.armijo_slope
    history: list[tuple[int, float, tuple]] = []
    iterations = 0
    stage_updates = 0
    prev_G = None
    prev_U = None

    while True:
        P = sweep.costates(X, U, blocks)
        G = sweep.gradient(X, P, U)
        cost = sweep.evaluate(X, U, blocks)

        # curvature pairs from the last accepted step
        if prev_G is not None:
            for b in blocks:
                s = U[:, b.ucols] - prev_U[:, b.ucols]
                if not np.any(s):
                    continue
                y = G[:, b.ucols] - prev_G[:, b.ucols]
                sy = sweep.dot(s, y)
                if sy > 1e-12 * math.sqrt(sweep.dot(s, s) * sweep.dot(y, y)):
                    b.memory.append((s, y, 1.0 / sy))

        changed = False
        for b in blocks:
            gnorm = float(np.max(np.abs(G[:, b.ucols])))
            b.gnorm = gnorm
            miss = X[-1, b.xcols] - b.final
            mnorm = float(np.max(np.abs(miss)))
            # subproblems of intermediate stages are solved loosely
            stage_tol = max(opts.gradient_tolerance, 0.1 * b.weight * mnorm)
            settled = gnorm <= stage_tol or b.stalled
            if not settled:
                b.done = False
                continue
            on_target = mnorm <= opts.residual_tolerance
            if on_target and b.stalled:
                b.floor_stalls += 1
            # repeated stalls on target mean the cost has hit its rounding floor
            if (on_target and (gnorm <= opts.gradient_tolerance or b.floor_stalls > FLOOR_RETRIES)
                    or b.stage >= MAX_STAGES):
                b.done = True
            else:
                b.advance(miss, opts.penalty, opts.residual_tolerance)
                b.done = False
                changed = True
        if changed:
            stage_updates += 1
            prev_G = None
            continue

        if all(b.done for b in blocks) or iterations >= opts.max_iterations:
            break
        if all(b.done or b.stalled for b in blocks):
            break

        active = [b for b in blocks if not b.done and not b.stalled]
        steps = {}
        for b in active:
            g = G[:, b.ucols]
            d = _lbfgs_direction(sweep, g, b.memory)
            slope = sweep.dot(g, d)
            # angle safeguard: stale curvature pairs can leave d almost orthogonal to g
            if not b.memory or not slope < -ANGLE_TOLERANCE * math.sqrt(sweep.dot(g, g) * sweep.dot(d, d)):
                d = -g
                slope = sweep.dot(g, d)
                sigma = opts.initial_step / (1.0 + b.gnorm)
            else:
                sigma = 1.0
            own = cost.own(b.index)
            for _ in range(MAX_BACKTRACKS):
                trial = U.copy()
                trial[:, b.ucols] += sigma * d
                Xt = sweep.states(trial)
                ct = None if Xt is None else sweep.evaluate(Xt, trial, blocks)
                if ct is not None:
                    change = cost.change_own(ct, b.index)
                    # strict decrease, and the rounded totals must agree, so that
                    # rounding ties never count as progress
                    if change <= c1 * sigma * slope and change < 0 and ct.own(b.index) <= own:
                        steps[b.index] = (sigma, d, slope, Xt, trial)
                        break
                sigma *= opts.backtrack_factor
            else:
                if b.memory:
                    b.memory.clear()
                else:
                    b.stalled = True

        if not steps:
            iterations += 1
            prev_G = None
            continue

        if len(steps) == 1:
            (sigma, d, slope, Xn, Un), = steps.values()
        else:
            tau = 1.0
            for _ in range(MAX_BACKTRACKS):
                Un = U.copy()
                for idx, (sigma, d, slope, _, _) in steps.items():
                    Un[:, blocks[idx].ucols] += tau * sigma * d
                Xn = sweep.states(Un)
                if w.rho == 0:
                    # no interaction term: the block decreases simply add up
                    break
                cn = None if Xn is None else sweep.evaluate(Xn, Un, blocks)
                if cn is not None:
                    total_slope = sum(s * sl for s, _, sl, _, _ in steps.values())
                    change = cost.change_total(cn)
                    if change <= c1 * tau * total_slope and change < 0 and cn.total() <= cost.total():
                        break
                tau *= opts.backtrack_factor
            else:
                iterations += 1
                prev_G = None
                for b in active:
                    b.memory.clear()
                continue

        new_cost = sweep.evaluate(Xn, Un, blocks)
        prev_G, prev_U = G, U
        U, X = Un, Xn
        iterations += 1
        history.append((iterations, new_cost.total(), tuple((b.stage, b.weight) for b in blocks)))

    P = sweep.costates(X, U, blocks)
    converged = all(b.done and b.gnorm <= opts.gradient_tolerance for b in blocks)
    converged = converged and _last_relative_decrease(history) <= opts.cost_tolerance
    sol = Solution(
        bc, grid, StateTrajectory(grid, X), CostateTrajectory(grid, P), ControlTrajectory(grid, U),
        report=None, cost_history=history,
        penalty=TerminalPenalty(
            (blocks[0].weight, blocks[1].weight),
            PairState.from_array(np.concatenate([b.target for b in blocks])),
        ),
    )
    sol.report = _report(sol, w, converged, iterations, "fbsm", opts.residual_tolerance)
    return sol


# ---------------------------------------------------------------------------
# single shooting
# ---------------------------------------------------------------------------


def _shoot(bc: BoundaryConditions, w: Weights, grid: TimeGrid, q: np.ndarray):
    z0 = np.concatenate([bc.initial.to_array(), q])
    Z, fail = K.extremal(z0, grid.steps, grid.h, *w.astuple())
    if fail >= 0:
        return None, None
    return Z, Z[-1, :6] - bc.final.to_array()


def _gauss_newton(bc, w, grid, q, opts: SolveOptions):
    Z, R = _shoot(bc, w, grid, q)
    if Z is None:
        return q, None, math.inf, 0
    norm = float(np.max(np.abs(R)))
    it = 0
    while norm > opts.residual_tolerance and it < opts.max_iterations:
        it += 1
        J = np.empty((6, 6))
        ok = True
        # central differences: the map is too curved near the root for
        # one-sided ones to keep Newton contracting below ~1e-5
        for i in range(6):
            step = FD_JACOBIAN_STEP * (1.0 + abs(q[i]))
            qi = q.copy()
            qi[i] += step
            _, Rp = _shoot(bc, w, grid, qi)
            qi[i] -= 2 * step
            _, Rm = _shoot(bc, w, grid, qi)
            if Rp is None or Rm is None:
                ok = False
                break
            J[:, i] = (Rp - Rm) / (2 * step)
        if not ok:
            break
        try:
            if np.linalg.cond(J) > 1e12:
                raise np.linalg.LinAlgError
            dq = np.linalg.solve(J, -R)
        except np.linalg.LinAlgError:
            dq = -J.T @ R
            if not np.any(dq):
                raise SingularJacobian("shooting Jacobian singular and gradient vanishes")
        lam = 1.0
        accepted = False
        for _ in range(MAX_BACKTRACKS):
            Zt, Rt = _shoot(bc, w, grid, q + lam * dq)
            if Zt is not None:
                nt = float(np.max(np.abs(Rt)))
                if nt < (1 - 1e-4 * lam) * norm or nt <= opts.residual_tolerance:
                    q, Z, R, norm = q + lam * dq, Zt, Rt, nt
                    accepted = True
                    break
            lam *= opts.backtrack_factor
        if not accepted:
            break
    return q, Z, norm, it


def _shooting_ladder():
    yield np.zeros(6)
    for j in range(3):
        for i in range(6):
            for sign in (1.0, -1.0):
                q = np.zeros(6)
                q[i] = sign * 10.0 ** (-2 + j)
                yield q


def shooting_solve(bc: BoundaryConditions, w: Weights, opts: SolveOptions = SolveOptions(),
                   grid: TimeGrid | None = None, guess=None) -> Solution:
    """Single shooting on the six initial costates with damped Gauss-Newton.

    ``guess`` seeds the initial costate (a warm start from :func:`fbsm_solve`
    for instance); without one a fixed ladder of small perturbations of zero
    is tried in order.
    """
    _require_valid(bc, w, opts)
    grid = grid or TimeGrid(bc.horizon, 2000)
    starts = [np.asarray(guess, dtype=float).reshape(6)] if guess is not None else _shooting_ladder()
    best = None
    total_it = 0
    for q0 in starts:
        q, Z, norm, it = _gauss_newton(bc, w, grid, q0.copy(), opts)
        total_it += it
        if Z is not None and (best is None or norm < best[2]):
            best = (q, Z, norm)
        if norm <= opts.residual_tolerance:
            break
    if best is None:
        raise SeparationTooSmall(math.nan, SEPARATION_GUARD)
    q, Z, norm = best
    X = StateTrajectory(grid, Z[:, :6])
    P = CostateTrajectory(grid, Z[:, 6:])
    sol = Solution(bc, grid, X, P, extremal_controls(X, P, w), report=None)
    sol.report = _report(sol, w, norm <= opts.residual_tolerance, total_it, "shooting", opts.residual_tolerance)
    return sol


def solve(bc: BoundaryConditions, w: Weights, opts: SolveOptions = SolveOptions(),
          grid: TimeGrid | None = None) -> Solution:
    """Dispatch on ``opts.method``; ``both`` warm-starts shooting from the sweep result."""
    if opts.method == "fbsm":
        return fbsm_solve(bc, w, opts, grid)
    if opts.method == "shooting":
        return shooting_solve(bc, w, opts, grid)
    _require_valid(bc, w, opts)
    first = fbsm_solve(bc, w, opts, grid)
    second = shooting_solve(bc, w, opts, first.grid, guess=first.costates.nodes[0])
    if not second.report.converged and first.report.converged:
        return first
    return second


# ---------------------------------------------------------------------------
# gradient oracle
# ---------------------------------------------------------------------------


def adjoint_cost_gradient(u: ControlTrajectory, bc: BoundaryConditions, w: Weights,
                          pen: TerminalPenalty) -> np.ndarray:
    """Gradient of :func:`augmented_cost` w.r.t. nodal controls from one costate sweep."""
    grid = u.grid
    X = integrate_forward(bc.initial, u, grid)
    wa, wb = pen.vehicle_weights
    miss = X.nodes[-1] - pen.target.to_array()
    pT = -np.concatenate([wa * miss[:3], wb * miss[3:]])
    P = integrate_backward(pT, X, u, grid, w)
    S = K.nodal_stationarity(X.nodes, P.nodes, u.nodes, w.delta)
    return -S * grid.weights[:, None]


def fd_cost_gradient(u: ControlTrajectory, bc: BoundaryConditions, w: Weights,
                     pen: TerminalPenalty) -> np.ndarray:
    """Central finite differences of :func:`augmented_cost` for every nodal control."""
    grid = u.grid

    def cost(nodes):
        return augmented_cost(integrate_forward(bc.initial, ControlTrajectory(grid, nodes), grid),
                              ControlTrajectory(grid, nodes), w, pen)

    base = u.nodes
    out = np.empty_like(base)
    for k in range(base.shape[0]):
        for j in range(4):
            step = 1e-6 * (1.0 + abs(base[k, j]))
            plus = base.copy()
            plus[k, j] += step
            minus = base.copy()
            minus[k, j] -= step
            out[k, j] = (cost(plus) - cost(minus)) / (2 * step)
    return out


def single_vehicle_problem(bc: BoundaryConditions, vehicle: int) -> BoundaryConditions:
    """Keep one vehicle's endpoints and park the other at the origin for the whole horizon.

    With ``rho = 0`` the parked companion has zero gradient and zero cost, so
    solving this pair problem is solving the single-vehicle problem.
    """
    parked = VehicleState(0.0, 0.0, 0.0)
    if vehicle == 0:
        return BoundaryConditions(PairState(bc.initial.a, parked), PairState(bc.final.a, parked), bc.horizon)
    return BoundaryConditions(PairState(parked, bc.initial.b), PairState(parked, bc.final.b), bc.horizon)


__all__ = [
    "PenaltySchedule", "SolveOptions", "TerminalPenalty", "SolveReport", "Solution", "Diagnostics",
    "augmented_cost", "fbsm_solve", "shooting_solve", "solve", "fd_cost_gradient",
    "adjoint_cost_gradient", "check_suite", "initial_controls", "single_vehicle_problem",
    "hamiltonian_profile", "relative_drift",
]
