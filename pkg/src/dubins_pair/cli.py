"""Command-line front end: ``dubins-pair solve | check | sweep``.

Exit codes: 0 converged (or every check passed), 1 input or I/O error,
2 solver did not converge, 3 a check failed.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import __version__
from .artifacts import write_plot, write_summary, write_sweep, write_trajectory
from .errors import DubinsPairError, ScenarioSyntaxError, ScenarioValidationError
from .integrate import ControlTrajectory, TimeGrid
from .scenario import SWEEP_PARAMETERS, Scenario, builtin_scenario, load_scenario, scenario_hash
from .solver import (
    METHODS,
    Solution,
    TerminalPenalty,
    adjoint_cost_gradient,
    fd_cost_gradient,
    single_vehicle_problem,
    solve,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_CONVERGED = 2
EXIT_CHECK_FAILED = 3

ORACLE_MAX_STEPS = 500
GRADIENT_MIN_COSINE = 0.999
GRADIENT_MAX_REL_ERROR = 5e-3
DRIFT_LIMIT = 1e-4
DECOUPLING_LIMIT = 1e-8


class InputError(Exception):
    pass


def _scenario_from_args(args) -> Scenario:
    try:
        sc = load_scenario(args.scenario) if args.scenario else builtin_scenario("baseline")
    except OSError as exc:
        raise InputError(f"cannot read scenario: {exc}") from None
    except ScenarioSyntaxError as exc:
        raise InputError(f"scenario syntax error: {exc}") from None
    except ScenarioValidationError as exc:
        raise InputError("invalid scenario:\n" + "\n".join(f"  {p}: {m}" for p, m in exc.errors)) from None
    if args.method:
        sc = replace(sc, options=replace(sc.options, method=args.method))
    if args.steps is not None:
        if args.steps < 2:
            raise InputError("--steps must be at least 2")
        sc = replace(sc, steps=args.steps)
    return sc


def _solve(sc: Scenario) -> Solution:
    return solve(sc.bc, sc.weights, sc.options, TimeGrid(sc.horizon, sc.steps))


def _write_artifacts(out: Path, sol: Solution, sc: Scenario):
    out.mkdir(parents=True, exist_ok=True)
    write_trajectory(out / "trajectory.csv", sol, sc.weights)
    write_summary(out / "summary.txt", sol, scenario_hash(sc))
    write_plot(out / "plot.svg", sol)


def run_solve(sc: Scenario, out: Path) -> int:
    try:
        sol = _solve(sc)
    except DubinsPairError as exc:
        print(f"solve failed: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    try:
        _write_artifacts(out, sol, sc)
    except OSError as exc:
        print(f"cannot write results: {exc}", file=sys.stderr)
        return EXIT_INPUT
    r = sol.report
    print(f"{r.method}: converged={r.converged} iterations={r.iterations} cost={r.final_cost:.10g} "
          f"residual={r.terminal_residual_norm:.3e} stationarity={r.max_stationarity:.3e}")
    return EXIT_OK if r.converged else EXIT_NOT_CONVERGED


def gradient_agreement(sol: Solution, sc: Scenario, corrupt: bool = False) -> tuple[float, float]:
    """Cosine and relative L2 error between adjoint and finite-difference gradients.

    Runs on a grid of at most ``ORACLE_MAX_STEPS`` steps, with the solution's
    controls resampled onto it and shifted by a fixed smooth perturbation:
    at the optimum itself the gradient vanishes and a relative error would
    only measure rounding noise.
    """
    n = min(sc.steps, ORACLE_MAX_STEPS)
    grid = TimeGrid(sc.horizon, n)
    fine = sol.grid.times
    nodes = np.column_stack([np.interp(grid.times, fine, c) for c in sol.controls.nodes.T])
    phase = grid.times / sc.horizon
    nodes = nodes + 0.1 * np.column_stack([np.sin(np.pi * (j + 1) * phase + j) for j in range(4)])
    u = ControlTrajectory(grid, nodes)
    pen = sol.penalty or TerminalPenalty(sc.options.penalty.initial, sc.final)
    adj = adjoint_cost_gradient(u, sc.bc, sc.weights, pen)
    if corrupt:
        adj = adj.copy()
        adj[:, 1] *= -1.0
    fd = fd_cost_gradient(u, sc.bc, sc.weights, pen)
    a, f = adj.ravel(), fd.ravel()
    denom = float(np.linalg.norm(a) * np.linalg.norm(f))
    cosine = float(a @ f) / denom if denom > 0 else (1.0 if not np.any(a - f) else 0.0)
    scale = float(np.linalg.norm(f))
    rel = float(np.linalg.norm(a - f)) / scale if scale > 0 else float(np.linalg.norm(a))
    return cosine, rel


def decoupling_error(sol: Solution, sc: Scenario) -> float:
    """Largest nodal gap between the pair solve and two single-vehicle solves."""
    grid = TimeGrid(sc.horizon, sc.steps)
    worst = 0.0
    for v in (0, 1):
        single = solve(single_vehicle_problem(sc.bc, v), sc.weights, sc.options, grid)
        xs, us = slice(3 * v, 3 * v + 3), slice(2 * v, 2 * v + 2)
        worst = max(worst,
                    float(np.max(np.abs(sol.states.nodes[:, xs] - single.states.nodes[:, xs]))),
                    float(np.max(np.abs(sol.controls.nodes[:, us] - single.controls.nodes[:, us]))))
    return worst


def run_check(sc: Scenario, corrupt_gradient: bool = False) -> int:
    try:
        sol = _solve(sc)
    except DubinsPairError as exc:
        print(f"solve failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    r, o = sol.report, sc.options
    rows = [
        ("converged", r.converged, str(r.converged)),
        ("stationarity", r.max_stationarity <= o.gradient_tolerance, f"{r.max_stationarity:.3e} <= {o.gradient_tolerance:g}"),
        ("terminal residual", r.terminal_residual_norm <= r.terminal_tolerance,
         f"{r.terminal_residual_norm:.3e} <= {r.terminal_tolerance:g}"),
        ("hamiltonian drift", r.hamiltonian_drift <= DRIFT_LIMIT, f"{r.hamiltonian_drift:.3e} <= {DRIFT_LIMIT:g}"),
        ("min separation", r.min_separation > 0, f"{r.min_separation:.6g} > 0"),
    ]
    cosine, rel = gradient_agreement(sol, sc, corrupt_gradient)
    rows.append(("gradient oracle", cosine > GRADIENT_MIN_COSINE and rel < GRADIENT_MAX_REL_ERROR,
                 f"cos {cosine:.6f}, rel {rel:.3e}"))
    if sc.weights.rho == 0:
        gap = decoupling_error(sol, sc)
        rows.append(("decoupling", gap <= DECOUPLING_LIMIT, f"{gap:.3e} <= {DECOUPLING_LIMIT:g}"))
    width = max(len(name) for name, _, _ in rows)
    for name, ok, detail in rows:
        print(f"{'PASS' if ok else 'FAIL'}  {name:<{width}}  {detail}")
    return EXIT_OK if all(ok for _, ok, _ in rows) else EXIT_CHECK_FAILED


def _sweep_point(sc: Scenario, out: Path) -> tuple:
    try:
        sol = _solve(sc)
    except DubinsPairError as exc:
        print(f"point failed in {out.name}: {exc}", file=sys.stderr)
        return (math.nan, math.nan, math.nan, 0, False)
    _write_artifacts(out, sol, sc)
    r = sol.report
    return (r.final_cost, r.min_separation, r.terminal_residual_norm, r.iterations, r.converged)


def parse_values(text: str) -> list[float]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise InputError("--values is empty")
    try:
        values = [float(p) for p in parts]
    except ValueError:
        raise InputError(f"--values must be comma-separated numbers, got {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise InputError("--values must be finite")
    return values


def run_sweep(sc: Scenario, param: str, values: list[float], out: Path, jobs: int = 1) -> int:
    if param not in SWEEP_PARAMETERS:
        raise InputError(f"--param must be one of {', '.join(SWEEP_PARAMETERS)}")
    if not values:
        raise InputError("--values is empty")
    points = []
    for i, v in enumerate(values):
        point = sc.with_parameter(param, v)
        problems = point.weights.violations() + point.options.violations()
        if not point.horizon > 0:
            problems.append("horizon must be positive")
        if problems:
            raise InputError(f"{param}={v!r}: " + "; ".join(problems))
        points.append((point, out / f"{i:03d}_{param}_{v!r}"))
    try:
        out.mkdir(parents=True, exist_ok=True)
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                results = list(pool.map(_sweep_point, *zip(*points)))
        else:
            results = [_sweep_point(p, d) for p, d in points]
        write_sweep(out / "sweep.csv", [(v, *res) for v, res in zip(values, results)])
    except OSError as exc:
        print(f"cannot write results: {exc}", file=sys.stderr)
        return EXIT_INPUT
    for v, res in zip(values, results):
        print(f"{param}={v!r}: converged={res[4]} cost={res[0]:.10g} min_separation={res[1]:.6g}")
    return EXIT_OK if all(res[4] for res in results) else EXIT_NOT_CONVERGED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dubins-pair", description="Optimal paths for a pair of Dubins vehicles.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="PATH", help="scenario JSON file (default: built-in baseline)")
    common.add_argument("--method", choices=METHODS, help="override the scenario's solver method")
    common.add_argument("--steps", type=int, metavar="N", help="override the number of grid steps")

    p = sub.add_parser("solve", parents=[common], help="solve and write trajectory.csv, summary.txt, plot.svg")
    p.add_argument("--out", default="out", metavar="DIR")

    p = sub.add_parser("check", parents=[common], help="solve, then verify the optimality certificate")
    p.add_argument("--corrupt-gradient", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("sweep", parents=[common], help="solve once per parameter value")
    p.add_argument("--out", default="out", metavar="DIR")
    p.add_argument("--param", required=True, metavar="NAME", help=f"one of {', '.join(SWEEP_PARAMETERS)}")
    p.add_argument("--values", required=True, metavar="CSVLIST", help="comma-separated values, e.g. 0.1,1,10")
    p.add_argument("--jobs", type=int, default=1, help="points solved in parallel")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; usage errors are input errors here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        sc = _scenario_from_args(args)
        if args.command == "solve":
            return run_solve(sc, Path(args.out))
        if args.command == "check":
            return run_check(sc, args.corrupt_gradient)
        return run_sweep(sc, args.param, parse_values(args.values), Path(args.out), max(1, args.jobs))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
