"""End-to-end acceptance checks, one test per criterion.

Run on its own with ``pytest tests/test_acceptance.py``; the terminal summary
lists one PASS/FAIL line per criterion.
"""

import math
import subprocess
import sys
import time
from dataclasses import replace

import numpy as np
import pytest

from dubins_pair.artifacts import SWEEP_COLUMNS, TRAJECTORY_COLUMNS, read_summary
from dubins_pair.integrate import ControlTrajectory, TimeGrid, integrate_forward, rk4_step
from dubins_pair.model import separation_sq
from dubins_pair.scenario import builtin_scenario, parse_scenario, serialize_scenario
from dubins_pair.solver import (
    SolveOptions,
    TerminalPenalty,
    adjoint_cost_gradient,
    fbsm_solve,
    fd_cost_gradient,
    shooting_solve,
    single_vehicle_problem,
)

from conftest import smooth_scenario

criterion = pytest.mark.criterion


def stage_runs(history):
    runs, key = [], None
    for _, cost, stage in history:
        if stage != key:
            runs.append([])
            key = stage
        runs[-1].append(cost)
    return runs


@criterion(1, "adjoint gradient matches finite differences and improves with N")
def test_gradient_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    bc, w = smooth_scenario(seed=int(rng.integers(1000)))
    amp, freq, phase = rng.uniform(0.1, 0.4, 4), rng.uniform(0.5, 2.0, 4), rng.uniform(0, 2 * np.pi, 4)
    pen = TerminalPenalty(5.0, bc.final)
    errors = []
    for n in (125, 250, 500):
        grid = TimeGrid(bc.horizon, n)
        t = grid.times[:, None]
        u = ControlTrajectory(grid, 0.6 + amp * np.sin(freq * t + phase))
        adj = adjoint_cost_gradient(u, bc, w, pen).ravel()
        fd = fd_cost_gradient(u, bc, w, pen).ravel()
        cosine = adj @ fd / (np.linalg.norm(adj) * np.linalg.norm(fd))
        errors.append(np.linalg.norm(adj - fd) / np.linalg.norm(fd))
    assert cosine > 0.999
    assert errors[-1] < 5e-3
    assert errors[0] > errors[1] > errors[2]
    assert time.perf_counter() - start < 120


@criterion(2, "Hamiltonian drift below 1e-6 at N=4000 and fourth-order decay")
def test_hamiltonian_conservation(baseline, baseline_fbsm):
    start = time.perf_counter()
    q0 = baseline_fbsm.costates.nodes[0]
    drift = {}
    for n in (1000, 2000, 4000):
        sol = shooting_solve(baseline.bc, baseline.weights, SolveOptions(max_iterations=100),
                             TimeGrid(baseline.horizon, n), guess=q0)
        assert sol.report.converged
        drift[n] = sol.report.hamiltonian_drift
        q0 = sol.costates.nodes[0]
    assert drift[4000] < 1e-6
    assert drift[1000] / drift[2000] >= 12
    assert time.perf_counter() - start < 60


@criterion(3, "RK4 reproduces the circular arc and the exponential step")
def test_integrator_exactness():
    grid = TimeGrid(1.0, 1000)
    speed, rate, x0 = 1.0, 1.7, np.array([0.5, -1.0, 0.3, 10.0, 10.0, 0.0])
    u = ControlTrajectory(grid, np.tile([speed, rate, 0.0, 0.0], (grid.steps + 1, 1)))
    end = integrate_forward(x0, u, grid).nodes[-1]
    r, h0, h1 = speed / rate, x0[2], x0[2] + rate
    arc = [x0[0] + r * (math.cos(h0) - math.cos(h1)), x0[1] + r * (math.sin(h1) - math.sin(h0)), h1]
    assert np.max(np.abs(end[:3] - arc)) < 1e-6
    step = rk4_step(lambda t, x: x, np.array([1.0]), 0.0, 0.1)[0]
    assert abs(step - math.exp(0.1)) < 1e-7


@criterion(4, "fbsm solves the baseline scenario within 500 iterations and 60 s")
def test_baseline_end_to_end(baseline):
    start = time.perf_counter()
    sol = fbsm_solve(baseline.bc, baseline.weights, baseline.options, TimeGrid(baseline.horizon, baseline.steps))
    elapsed = time.perf_counter() - start
    r = sol.report
    assert r.converged
    assert r.terminal_residual_norm < 1e-2
    assert min(separation_sq(x) for x in sol.states.nodes) > 0 and r.min_separation > 0
    for run in stage_runs(sol.cost_history):
        assert all(b <= a for a, b in zip(run, run[1:]))
    assert r.iterations <= 500
    assert elapsed < 60


@criterion(5, "shooting warm-started from fbsm reaches |R| < 1e-6 with cost within 1%")
def test_cross_method_agreement(baseline_fbsm, baseline_shooting):
    assert baseline_shooting.report.terminal_residual_norm < 1e-6
    assert baseline_shooting.report.converged
    fb, sh = baseline_fbsm.report.final_cost, baseline_shooting.report.final_cost
    assert abs(sh - fb) <= 0.01 * abs(fb)


@criterion(6, "with rho = 0 the pair solve equals two single-vehicle solves")
def test_decoupling(baseline):
    w = replace(baseline.weights, rho=0.0)
    grid = TimeGrid(baseline.horizon, baseline.steps)
    pair = fbsm_solve(baseline.bc, w, baseline.options, grid)
    for v in (0, 1):
        single = fbsm_solve(single_vehicle_problem(baseline.bc, v), w, baseline.options, grid)
        xs, us = slice(3 * v, 3 * v + 3), slice(2 * v, 2 * v + 2)
        assert np.max(np.abs(pair.states.nodes[:, xs] - single.states.nodes[:, xs])) <= 1e-8
        assert np.max(np.abs(pair.controls.nodes[:, us] - single.controls.nodes[:, us])) <= 1e-8


@criterion(7, "swapping the vehicles swaps the solution")
def test_swap_equivariance(baseline, baseline_fbsm):
    sw = fbsm_solve(baseline.bc.swapped(), baseline.weights.swapped(), baseline.options,
                    TimeGrid(baseline.horizon, baseline.steps))
    assert np.max(np.abs(sw.states.nodes - baseline_fbsm.states.nodes[:, [3, 4, 5, 0, 1, 2]])) <= 1e-6
    assert np.max(np.abs(sw.controls.nodes - baseline_fbsm.controls.nodes[:, [2, 3, 0, 1]])) <= 1e-6
    assert np.max(np.abs(sw.costates.nodes - baseline_fbsm.costates.nodes[:, [3, 4, 5, 0, 1, 2]])) <= 1e-6


@criterion(8, "converged fbsm solutions are stationary to 1e-6 at every node")
@pytest.mark.parametrize("name, rho, steps", [
    ("baseline", None, 2000),
    ("baseline", 0.1, 1000),
    ("baseline", 10.0, 4000),
    ("baseline_alt", None, 2000),
])
def test_stationarity(name, rho, steps):
    sc = builtin_scenario(name)
    if rho is not None:
        sc = sc.with_parameter("rho", rho)
    sol = fbsm_solve(sc.bc, sc.weights, sc.options, TimeGrid(sc.horizon, steps))
    assert sol.report.converged
    assert sol.report.max_stationarity <= 1e-6


def _cli(*args, cwd):
    return subprocess.run([sys.executable, "-m", "dubins_pair.cli", *args], cwd=cwd,
                          capture_output=True, text=True)


@criterion(9, "CLI round trip, exit codes, CSV schema and byte-identical outputs")
def test_cli_contract(tmp_path):
    for name in ("baseline", "baseline_alt"):
        sc = builtin_scenario(name)
        assert parse_scenario(serialize_scenario(sc)) == sc

    scenario = tmp_path / "baseline.json"
    scenario.write_text(serialize_scenario(builtin_scenario()))
    for out in ("run1", "run2"):
        done = _cli("solve", "--scenario", str(scenario), "--out", out, cwd=tmp_path)
        assert done.returncode == 0, done.stderr
    for artifact in ("trajectory.csv", "summary.txt", "plot.svg"):
        assert (tmp_path / "run1" / artifact).read_bytes() == (tmp_path / "run2" / artifact).read_bytes()

    lines = (tmp_path / "run1" / "trajectory.csv").read_text().splitlines()
    assert lines[0] == ",".join(TRAJECTORY_COLUMNS)
    assert len(lines) == 2002
    assert all(line.count(",") == len(TRAJECTORY_COLUMNS) - 1 for line in lines)
    times = [float(line.split(",", 1)[0]) for line in lines[1:]]
    assert times[0] == 0.0 and times[-1] == 10.0 and all(b > a for a, b in zip(times, times[1:]))
    assert read_summary(tmp_path / "run1" / "summary.txt")["converged"] == "true"

    truncated = tmp_path / "truncated.json"
    truncated.write_text(serialize_scenario(replace(builtin_scenario(),
                                                    options=replace(builtin_scenario().options, max_iterations=1))))
    assert _cli("solve", "--scenario", str(truncated), "--out", "t", cwd=tmp_path).returncode == 2
    assert read_summary(tmp_path / "t" / "summary.txt")["converged"] == "false"
    assert _cli("solve", "--scenario", "missing.json", cwd=tmp_path).returncode == 1
    assert _cli("check", "--steps", "500", "--corrupt-gradient", cwd=tmp_path).returncode == 3
    assert _cli("check", "--steps", "500", cwd=tmp_path).returncode == 0
    assert _cli("sweep", "--param", "rho", "--values", "", cwd=tmp_path).returncode == 1

    done = _cli("sweep", "--steps", "500", "--param", "rho", "--values", "0.1,1,10", "--out", "sw", cwd=tmp_path)
    assert done.returncode == 0, done.stderr
    rows = (tmp_path / "sw" / "sweep.csv").read_text().splitlines()
    assert rows[0] == ",".join(SWEEP_COLUMNS) and len(rows) == 4
