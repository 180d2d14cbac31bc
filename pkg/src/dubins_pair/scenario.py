"""Scenario files: strict JSON in, canonical JSON out.

Every key is checked against a fixed layout, so a misspelt weight name is an
error rather than a silent default.  All problems are collected and reported
together, each with a dotted field path such as ``weights.delta``.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from importlib import resources

from .errors import ScenarioSyntaxError, ScenarioValidationError
from .model import BoundaryConditions, PairState, VehicleState, Weights, validate_scenario
from .solver import METHODS, PenaltySchedule, SolveOptions

DEFAULT_HORIZON = 10.0
DEFAULT_STEPS = 2000
SWEEP_PARAMETERS = ("delta", "beta", "alpha", "rho", "horizon", "wT")

_WEIGHT_KEYS = ("delta", "beta", "alpha", "rho")
_VEHICLE_KEYS = ("initial", "final")
_PENALTY_KEYS = ("initial", "growth", "max")
_SOLVER_REALS = (
    "gradient_tolerance", "cost_tolerance", "armijo_slope", "backtrack_factor",
    "initial_step", "residual_tolerance",
)
_TOP_KEYS = ("horizon", "steps", "weights", "vehicle1", "vehicle2", "solver")


@dataclass(frozen=True)
class Scenario:
    initial: PairState
    final: PairState
    horizon: float = DEFAULT_HORIZON
    steps: int = DEFAULT_STEPS
    weights: Weights = field(default_factory=Weights)
    options: SolveOptions = field(default_factory=SolveOptions)

    @property
    def bc(self) -> BoundaryConditions:
        return BoundaryConditions(self.initial, self.final, self.horizon)

    def with_parameter(self, name: str, value: float) -> Scenario:
        """Copy with one sweepable parameter replaced."""
        if name in _WEIGHT_KEYS:
            return replace(self, weights=replace(self.weights, **{name: value}))
        if name == "horizon":
            return replace(self, horizon=value)
        if name == "wT":
            pen = replace(self.options.penalty, initial=value)
            return replace(self, options=replace(self.options, penalty=pen))
        raise ValueError(f"unknown sweep parameter {name!r}; expected one of {', '.join(SWEEP_PARAMETERS)}")


class _Collector:
    def __init__(self):
        self.errors: list[tuple[str, str]] = []

    def add(self, path: str, message: str):
        self.errors.append((path, message))

    def table(self, obj, path: str, allowed) -> dict:
        if not isinstance(obj, dict):
            self.add(path or "<root>", "must be an object")
            return {}
        for key in obj:
            if key not in allowed:
                self.add(_join(path, key), "unknown key")
        return obj

    def real(self, obj: dict, key: str, path: str, default: float) -> float:
        if key not in obj:
            return default
        v = obj[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
            self.add(_join(path, key), "must be a finite number")
            return default
        return float(v)

    def integer(self, obj: dict, key: str, path: str, default: int) -> int:
        if key not in obj:
            return default
        v = obj[key]
        if isinstance(v, bool) or not isinstance(v, int):
            self.add(_join(path, key), "must be an integer")
            return default
        return v

    def triple(self, obj: dict, key: str, path: str) -> VehicleState | None:
        where = _join(path, key)
        if key not in obj:
            self.add(where, "is required")
            return None
        v = obj[key]
        if not isinstance(v, list) or len(v) != 3:
            self.add(where, "must be a list [pos1, pos2, heading]")
            return None
        if any(isinstance(c, bool) or not isinstance(c, (int, float)) or not math.isfinite(c) for c in v):
            self.add(where, "entries must be finite numbers")
            return None
        return VehicleState(*(float(c) for c in v))


def _join(path: str, key: str) -> str:
    return f"{path}.{key}" if path else key


def _pairs_no_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ValueError(f"duplicate key {k!r}")
        out[k] = v
    return out


def _reject_constant(name):
    raise ValueError(f"{name} is not a number")


def _load(text: str):
    try:
        return json.loads(text, object_pairs_hook=_pairs_no_duplicates, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise ScenarioSyntaxError(str(exc), None, None) from None


def parse_scenario(text: str) -> Scenario:
    """Parse and validate scenario text.

    Raises :class:`ScenarioSyntaxError` for malformed JSON and
    :class:`ScenarioValidationError` carrying every field problem otherwise.
    """
    raw = _load(text)
    c = _Collector()
    top = c.table(raw, "", _TOP_KEYS)

    horizon = c.real(top, "horizon", "", DEFAULT_HORIZON)
    steps = c.integer(top, "steps", "", DEFAULT_STEPS)
    if steps < 2:
        c.add("steps", "must be at least 2")
    if not horizon > 0:
        c.add("horizon", "must be positive")

    wraw = c.table(top.get("weights", {}), "weights", _WEIGHT_KEYS)
    wdef = Weights()
    weights = Weights(**{k: c.real(wraw, k, "weights", getattr(wdef, k)) for k in _WEIGHT_KEYS})
    if not weights.delta > 0:
        c.add("weights.delta", "must be positive")
    for k in ("beta", "alpha", "rho"):
        if not getattr(weights, k) >= 0:
            c.add(f"weights.{k}", "must be non-negative")

    ends = {}
    for name in ("vehicle1", "vehicle2"):
        if name not in top:
            c.add(name, "is required")
            continue
        v = c.table(top[name], name, _VEHICLE_KEYS)
        ends[name] = (c.triple(v, "initial", name), c.triple(v, "final", name))

    options = _parse_options(c, top.get("solver", {}))

    if c.errors:
        raise ScenarioValidationError(c.errors)
    (a0, a1), (b0, b1) = ends["vehicle1"], ends["vehicle2"]
    scenario = Scenario(PairState(a0, b0), PairState(a1, b1), horizon, steps, weights, options)
    for msg in validate_scenario(scenario.bc, weights):
        if "endpoint separation" in msg:
            c.add(f"vehicle2.{msg.split()[0]}", "coincides with vehicle1 (separation below guard)")
    if c.errors:
        raise ScenarioValidationError(c.errors)
    return scenario


def _parse_options(c: _Collector, raw) -> SolveOptions:
    allowed = ("method", "max_iterations", *_SOLVER_REALS, "penalty")
    s = c.table(raw, "solver", allowed)
    d = SolveOptions()
    method = s.get("method", d.method)
    if not isinstance(method, str) or method not in METHODS:
        c.add("solver.method", f"must be one of {', '.join(METHODS)}")
        method = d.method
    max_it = c.integer(s, "max_iterations", "solver", d.max_iterations)
    if max_it < 1:
        c.add("solver.max_iterations", "must be a positive integer")
    reals = {k: c.real(s, k, "solver", getattr(d, k)) for k in _SOLVER_REALS}
    for k in ("gradient_tolerance", "cost_tolerance", "residual_tolerance", "initial_step"):
        if not reals[k] > 0:
            c.add(f"solver.{k}", "must be positive")
    for k in ("armijo_slope", "backtrack_factor"):
        if not 0 < reals[k] < 1:
            c.add(f"solver.{k}", "must lie strictly between 0 and 1")

    p = c.table(s.get("penalty", {}), "solver.penalty", _PENALTY_KEYS)
    pen = PenaltySchedule(**{k: c.real(p, k, "solver.penalty", getattr(d.penalty, k)) for k in _PENALTY_KEYS})
    if not pen.initial > 0:
        c.add("solver.penalty.initial", "must be positive")
    if not pen.growth > 1:
        c.add("solver.penalty.growth", "must exceed 1")
    if not pen.max >= pen.initial:
        c.add("solver.penalty.max", "must be at least solver.penalty.initial")
    return SolveOptions(method=method, max_iterations=max_it, penalty=pen, **reals)


def scenario_to_dict(s: Scenario) -> dict:
    o = s.options
    return {
        "horizon": s.horizon,
        "steps": s.steps,
        "weights": {k: getattr(s.weights, k) for k in _WEIGHT_KEYS},
        "vehicle1": {"initial": list(s.initial.a.to_array().tolist()), "final": list(s.final.a.to_array().tolist())},
        "vehicle2": {"initial": list(s.initial.b.to_array().tolist()), "final": list(s.final.b.to_array().tolist())},
        "solver": {
            "method": o.method,
            "max_iterations": o.max_iterations,
            **{k: getattr(o, k) for k in _SOLVER_REALS},
            "penalty": {k: getattr(o.penalty, k) for k in _PENALTY_KEYS},
        },
    }


def serialize_scenario(s: Scenario) -> str:
    """Canonical text: every field spelled out, floats in shortest round-trip form."""
    return json.dumps(scenario_to_dict(s), indent=2) + "\n"


def scenario_hash(s: Scenario) -> str:
    canonical = json.dumps(scenario_to_dict(s), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario(fh.read())


def builtin_scenario(name: str = "baseline") -> Scenario:
    text = resources.files("dubins_pair").joinpath("scenarios", f"{name}.json").read_text(encoding="utf-8")
    return parse_scenario(text)
