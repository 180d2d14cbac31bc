"""Result files: trajectory CSV, key=value summary and an SVG path plot.

All writers are deterministic: the same solution always produces the same
bytes.  Floats in the CSV and summary use ``repr`` (shortest round-trip form).
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from . import __version__
from . import _kernels as K
from .model import Weights
from .solver import Solution, hamiltonian_profile

TRAJECTORY_COLUMNS = (
    "t", "x1", "x2", "x3", "y1", "y2", "y3", "u1", "u2", "v1", "v2",
    "p1", "p2", "p3", "p4", "p5", "p6", "H", "sep",
)
SWEEP_COLUMNS = ("value", "final_cost", "min_separation", "terminal_residual_norm", "iterations", "converged")


def _num(v) -> str:
    return repr(float(v))


def trajectory_rows(sol: Solution, w: Weights) -> np.ndarray:
    X, P, U = sol.states.nodes, sol.costates.nodes, sol.controls.nodes
    H = hamiltonian_profile(sol.states, sol.costates, sol.controls, w)
    sep = np.sqrt([K.separation_sq(x) for x in X])
    return np.column_stack([sol.grid.times, X, U, P, H, sep])


def write_trajectory(path: Path, sol: Solution, w: Weights):
    lines = [",".join(TRAJECTORY_COLUMNS)]
    lines += [",".join(_num(v) for v in row) for row in trajectory_rows(sol, w)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def summary_items(sol: Solution, scenario_hash: str) -> list[tuple[str, str]]:
    r = sol.report
    return [
        ("converged", "true" if r.converged else "false"),
        ("method", r.method),
        ("iterations", str(r.iterations)),
        ("final_cost", _num(r.final_cost)),
        ("terminal_residual", ",".join(_num(v) for v in r.terminal_residual)),
        ("terminal_residual_norm", _num(r.terminal_residual_norm)),
        ("terminal_tolerance", _num(r.terminal_tolerance)),
        ("max_stationarity", _num(r.max_stationarity)),
        ("hamiltonian_drift", _num(r.hamiltonian_drift)),
        ("min_separation", _num(r.min_separation)),
        ("steps", str(sol.grid.steps)),
        ("horizon", _num(sol.grid.horizon)),
        ("tool_version", __version__),
        ("scenario_sha256", scenario_hash),
    ]


def write_summary(path: Path, sol: Solution, scenario_hash: str):
    text = "".join(f"{k}={v}\n" for k, v in summary_items(sol, scenario_hash))
    Path(path).write_text(text, encoding="utf-8")


def read_summary(path: Path) -> dict[str, str]:
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        key, _, value = line.partition("=")
        out[key] = value
    return out


_COLOURS = ("#1f5fbf", "#c0392b")


def render_svg(sol: Solution, size: int = 480, margin: int = 30) -> str:
    """Both paths in the (pos1, pos2) plane with equal axis scaling."""
    X = sol.states.nodes
    paths = [X[:, 0:2], X[:, 3:5]]
    targets = sol.bc.final.to_array()
    pts = np.vstack(paths + [targets[[0, 1]][None, :], targets[[3, 4]][None, :]])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = max(float(np.max(hi - lo)), 1e-9)
    scale = (size - 2 * margin) / span
    centre = (lo + hi) / 2

    def xy(p):
        # second coordinate points up on the page
        sx = size / 2 + (p[0] - centre[0]) * scale
        sy = size / 2 - (p[1] - centre[1]) * scale
        return f"{sx:.2f}", f"{sy:.2f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for i, (path, colour) in enumerate(zip(paths, _COLOURS)):
        step = max(1, math.ceil(len(path) / 1000))
        keep = np.vstack([path[::step], path[-1:]])
        coords = " ".join(",".join(xy(p)) for p in keep)
        out.append(f'<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{coords}"/>')
        sx, sy = xy(path[0])
        out.append(f'<circle cx="{sx}" cy="{sy}" r="4" fill="{colour}"/>')
        ex, ey = xy(path[-1])
        out.append(f'<rect x="{float(ex) - 4:.2f}" y="{float(ey) - 4:.2f}" width="8" height="8" fill="{colour}"/>')
        out.append(f'<text x="{sx}" y="{float(sy) - 8:.2f}" font-size="11" fill="{colour}">vehicle {i + 1}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_plot(path: Path, sol: Solution):
    Path(path).write_text(render_svg(sol), encoding="utf-8")


def write_sweep(path: Path, rows: list[tuple]):
    lines = [",".join(SWEEP_COLUMNS)]
    for value, cost, sep, resid, its, conv in rows:
        lines.append(",".join([_num(value), _num(cost), _num(sep), _num(resid), str(its), "true" if conv else "false"]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
